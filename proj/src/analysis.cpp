#include "ecx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ecx/eciplus.hpp"
#include "ecx/error.hpp"
#include "ecx/stats.hpp"

namespace ecx {
namespace {

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

AlgoConfig fixed_config(Init init, Normalization norm, std::size_t iterations) {
    AlgoConfig c;
    c.init = init;
    c.normalization = norm;
    c.stop = FixedIterations{iterations};
    return c;
}

} // namespace

RankReport rank_correlations(std::span<const double> a, std::span<const double> b, Labels labels) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "score vectors differ in length");
    if (a.size() < 2) throw Error(ErrorCode::LengthMismatch, "need at least 2 scores to rank");
    if (!labels.empty() && labels.size() != a.size()) {
        throw Error(ErrorCode::LengthMismatch, "label count does not match scores");
    }

    RankReport r;
    r.labels = std::move(labels);
    r.scores_a.assign(a.begin(), a.end());
    r.scores_b.assign(b.begin(), b.end());
    r.ranks_a = average_ranks(a);
    r.ranks_b = average_ranks(b);

    if (r.ranks_a == r.ranks_b) {
        r.spearman = 1.0;
    } else {
        r.spearman = pearson(r.ranks_a, r.ranks_b);
    }
    if (!is_constant(a) && !is_constant(b)) r.pearson = pearson(a, b);

    for (std::size_t i = 0; i < a.size(); ++i) {
        r.max_rank_displacement = std::max(r.max_rank_displacement, std::abs(r.ranks_a[i] - r.ranks_b[i]));
    }
    r.discordant_pairs = discordant_pairs(a, b);
    return r;
}

double tolerant_spearman(std::span<const double> a, std::span<const double> b, double rel_tol) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "score vectors differ in length");
    const Vector ra = average_ranks(a, rel_tol), rb = average_ranks(b, rel_tol);
    return ra == rb ? 1.0 : pearson(ra, rb);
}

double proportionality_deviation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "vectors differ in length");
    Vector la = log_scores(a), lb = log_scores(b);
    const double ma = arithmetic_mean(la), mb = arithmetic_mean(lb);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(std::expm1((la[i] - ma) - (lb[i] - mb))));
    }
    return worst;
}

EquivalenceReport equivalence_check(const ExportMatrix& x, std::size_t iterations, double tol,
                                    std::size_t converged_iterations) {
    if (!x.is_pruned()) throw Error(ErrorCode::NotPruned, "equivalence check requires a pruned matrix");
    const std::size_t horizon = std::max(iterations, converged_iterations);

    const IterationTrace fit =
        run(x.values(), fixed_config(Init::Ones, Normalization::ArithmeticMean, 2 * horizon));
    const IterationTrace eci = eci_iterate(x, fixed_config(Init::Ones, Normalization::GeometricMean, horizon));

    EquivalenceReport rep;
    rep.iterations = iterations;
    for (std::size_t n = 0; n <= iterations; ++n) {
        const Vector& f = fit.countries[2 * n];
        Vector inv_q = fit.products[2 * n];
        for (double& v : inv_q) v = 1.0 / v;

        const double dc = proportionality_deviation(f, eci.countries[n]);
        const double dp = proportionality_deviation(inv_q, eci.products[n]);
        rep.country_deviation.push_back(dc);
        rep.product_deviation.push_back(dp);
        rep.max_deviation = std::max({rep.max_deviation, dc, dp});
        if (!(dc <= tol) || !(dp <= tol)) {
            throw Error(ErrorCode::EquivalenceViolation,
                        "iterates diverge at N=" + std::to_string(n) + " (country deviation " +
                            std::to_string(dc) + ", product deviation " + std::to_string(dp) + ")");
        }
    }
    const double tie_tol = std::max(tol, 0.0);
    rep.spearman = tolerant_spearman(fit.countries[2 * iterations], eci.countries[iterations], tie_tol);
    rep.converged_spearman = tolerant_spearman(fit.countries[2 * converged_iterations],
                                               eci.countries[converged_iterations], tie_tol);
    return rep;
}

RankReport one_iteration_anomaly(const BinaryMatrix& m) {
    const IterationTrace once = run(m, fixed_config(Init::Degree, Normalization::ArithmeticMean, 1));
    const IterationTrace converged = run(m, fixed_config(Init::Ones, Normalization::ArithmeticMean, 200));
    return rank_correlations(once.final_countries(), converged.final_countries(), m.countries());
}

RankReport one_iteration_anomaly(const ExportMatrix& x, double threshold) {
    return one_iteration_anomaly(binarize(rca(x), threshold).matrix);
}

double diversity_correlation(const BinaryMatrix& m, std::span<const double> fitness) {
    if (fitness.size() != m.num_countries()) {
        throw Error(ErrorCode::LengthMismatch, "fitness vector does not match country count");
    }
    return pearson(diversification(m), fitness);
}

double offset_correlation(const ExportMatrix& x, std::size_t iterations) {
    const IterationTrace eci = eci_iterate(x, fixed_config(Init::Ones, Normalization::GeometricMean, iterations));
    return pearson(eci_offset_argument(x), eci.final_countries());
}

InitInvariance init_invariance(const Matrix& m, std::size_t iterations, double quasi_zero_threshold) {
    const IterationTrace ones = run(m, fixed_config(Init::Ones, Normalization::ArithmeticMean, iterations));
    const IterationTrace degree = run(m, fixed_config(Init::Degree, Normalization::ArithmeticMean, iterations));
    InitInvariance out;
    out.spearman = rank_correlations(ones.final_countries(), degree.final_countries()).spearman;
    const Vector& f1 = ones.final_countries();
    const Vector& f2 = degree.final_countries();
    out.min_score = std::min(*std::min_element(f1.begin(), f1.end()), *std::min_element(f2.begin(), f2.end()));
    out.quasi_zero = out.min_score < quasi_zero_threshold;
    return out;
}

ScatterTable scatter_table(std::span<const double> x, std::span<const double> y, const Labels& labels) {
    if (x.size() != y.size() || x.size() != labels.size()) {
        throw Error(ErrorCode::LengthMismatch, "scatter columns differ in length");
    }
    ScatterTable t;
    t.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t.push_back({labels[i], x[i], y[i]});
    return t;
}

ScatterTable scatter_preset(const ExportMatrix& x, ScatterPreset preset, double threshold) {
    const EciPlusResult eci = compute_eci_plus(x);
    const BinaryMatrix m = binarize(rca(x), threshold).matrix;

    Vector fitness;
    if (preset == ScatterPreset::StandardizedOneIteration) {
        fitness = run(m, fixed_config(Init::Degree, Normalization::ArithmeticMean, 1)).final_countries();
    } else {
        fitness = run(m, fixed_config(Init::Ones, Normalization::ArithmeticMean, 200)).final_countries();
    }
    const Vector y = preset == ScatterPreset::LogConverged ? log_scores(fitness) : standardize(fitness);

    std::map<std::string, double> eci_by_label;
    for (std::size_t c = 0; c < eci.countries.size(); ++c) eci_by_label[eci.countries[c]] = eci.eci_plus[c];
    Vector xs;
    for (const auto& label : m.countries()) xs.push_back(eci_by_label.at(label));
    return scatter_table(xs, y, m.countries());
}

} // namespace ecx
