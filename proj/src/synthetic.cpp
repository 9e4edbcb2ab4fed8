#include "ecx/synthetic.hpp"

#include <cmath>
#include <numbers>

namespace ecx {
namespace {

Labels labels(const char* prefix, std::size_t n) {
    Labels out;
    const int width = n < 10 ? 1 : n < 100 ? 2 : 3;
    for (std::size_t i = 0; i < n; ++i) {
        std::string idx = std::to_string(i);
        out.push_back(prefix + std::string(width - static_cast<int>(idx.size()), '0') + idx);
    }
    return out;
}

} // namespace

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = hi - lo + 1;
    return lo + static_cast<std::size_t>(engine_() % span);
}

double Rng::normal() {
    // Box-Muller; the second variate is discarded to keep the stream simple.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

BinaryMatrix nested_noise_matrix(std::size_t countries, std::size_t products, double flip,
                                 std::uint64_t seed) {
    Rng rng(seed);
    Matrix bits(countries, products);
    for (std::size_t c = 0; c < countries; ++c) {
        const std::size_t reach = (products * (countries - c) + countries - 1) / countries;
        for (std::size_t p = 0; p < products; ++p) {
            double v = p < reach ? 1.0 : 0.0;
            if (rng.uniform() < flip) v = 1.0 - v;
            bits(c, p) = v;
        }
    }
    // Prune through the export path: 0/1 values are valid flows.
    ExportMatrix raw(labels("C", countries), labels("P", products), bits);
    auto pruned = prune(raw).matrix;
    return BinaryMatrix(pruned.countries(), pruned.products(), pruned.values());
}

ExportMatrix log_uniform_matrix(Rng& rng, std::size_t countries, std::size_t products, double lo,
                                double hi) {
    const double llo = std::log(lo), lhi = std::log(hi);
    Matrix v(countries, products);
    for (std::size_t c = 0; c < countries; ++c)
        for (std::size_t p = 0; p < products; ++p) v(c, p) = std::exp(rng.uniform(llo, lhi));
    return ExportMatrix(labels("C", countries), labels("P", products), std::move(v), "USD");
}

ExportMatrix log_normal_matrix(std::size_t countries, std::size_t products, std::uint64_t seed) {
    Rng rng(seed);
    Vector country_size(countries), product_size(products);
    for (double& s : country_size) s = 1.5 * rng.normal();
    for (double& s : product_size) s = 1.0 * rng.normal();
    Matrix v(countries, products);
    for (std::size_t c = 0; c < countries; ++c)
        for (std::size_t p = 0; p < products; ++p)
            v(c, p) = std::exp(10.0 + country_size[c] + product_size[p] + 1.2 * rng.normal());
    return ExportMatrix(labels("C", countries), labels("P", products), std::move(v), "USD");
}

std::vector<ExportMatrix> random_corpus(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ExportMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t nc = rng.uniform_index(5, 30);
        const std::size_t np = rng.uniform_index(5, 50);
        out.push_back(log_uniform_matrix(rng, nc, np));
    }
    return out;
}

std::vector<ExportMatrix> sparse_corpus(std::size_t count, std::uint64_t seed, double sparsity) {
    Rng rng(seed);
    std::vector<ExportMatrix> out;
    while (out.size() < count) {
        const std::size_t nc = rng.uniform_index(5, 30);
        const std::size_t np = rng.uniform_index(5, 50);
        ExportMatrix dense = log_uniform_matrix(rng, nc, np);
        Matrix v = dense.values();
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t p = 0; p < np; ++p)
                if (rng.uniform() < sparsity) v(c, p) = 0.0;
        ExportMatrix sparse(dense.countries(), dense.products(), std::move(v), dense.unit());
        try {
            out.push_back(prune(sparse).matrix);
        } catch (const std::exception&) {
            // Fully emptied draw; take the next one.
        }
    }
    return out;
}

} // namespace ecx
