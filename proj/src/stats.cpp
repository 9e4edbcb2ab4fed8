#include "ecx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ecx/error.hpp"

namespace ecx {

double arithmetic_mean(std::span<const double> v) {
    if (v.empty()) throw Error(ErrorCode::EmptyInput, "mean of empty vector");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double geometric_mean(std::span<const double> v) {
    if (v.empty()) throw Error(ErrorCode::EmptyInput, "geometric mean of empty vector");
    double s = 0.0;
    for (double x : v) s += std::log(x);
    return std::exp(s / static_cast<double>(v.size()));
}

double population_stddev(std::span<const double> v) {
    const double m = arithmetic_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "pearson: length mismatch");
    if (a.size() < 2) throw Error(ErrorCode::DegenerateDistribution, "pearson: fewer than 2 points");
    const double ma = arithmetic_mean(a);
    const double mb = arithmetic_mean(b);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        throw Error(ErrorCode::DegenerateDistribution, "pearson: constant input");
    }
    // sqrt(saa * saa) == saa exactly, so identical inputs give exactly 1.
    const double r = sab / std::sqrt(saa * sbb);
    return std::clamp(r, -1.0, 1.0);
}

Vector average_ranks(std::span<const double> scores) { return average_ranks(scores, 0.0); }

Vector average_ranks(std::span<const double> scores, double rel_tol) {
    auto tied = [rel_tol](double a, double b) {
        return a == b || std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
    };
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return scores[i] > scores[j]; });
    Vector ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && tied(scores[order[j + 1]], scores[order[j]])) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::size_t discordant_pairs(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "discordant_pairs: length mismatch");
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            if ((da > 0 && db < 0) || (da < 0 && db > 0)) ++count;
        }
    }
    return count;
}

} // namespace ecx
