#include "ecx/fitness.hpp"

#include <algorithm>
#include <cmath>

#include "ecx/error.hpp"
#include "ecx/stats.hpp"
#include "iteration_driver.hpp"

namespace ecx {
namespace {

void require_pruned(const Matrix& m) {
    if (m.empty()) throw Error(ErrorCode::NotPruned, "empty matrix");
    for (double s : m.row_sums())
        if (!(s > 0.0)) throw Error(ErrorCode::NotPruned, "matrix has an all-zero country row");
    for (double s : m.col_sums())
        if (!(s > 0.0)) throw Error(ErrorCode::NotPruned, "matrix has an all-zero product column");
}

void divide(Vector& v, double by) {
    for (double& x : v) x /= by;
}

StepResult unchecked_step(const Matrix& m, std::span<const double> countries,
                          std::span<const double> products, Normalization kind) {
    for (double f : countries) {
        if (f == 0.0) {
            throw Error(ErrorCode::ZeroFitness,
                        "a country score underflowed to 0; the complexity update is undefined");
        }
    }
    StepResult out{raw_country_update(m, products), raw_product_update(m, countries), {}};
    out.normalizers = {normalizer(out.countries, kind), normalizer(out.products, kind)};
    if (!(out.normalizers.country > 0.0) || !std::isfinite(out.normalizers.country) ||
        !(out.normalizers.product > 0.0) || !std::isfinite(out.normalizers.product)) {
        throw Error(ErrorCode::ZeroFitness, "score vector collapsed during normalization");
    }
    divide(out.countries, out.normalizers.country);
    divide(out.products, out.normalizers.product);
    return out;
}

} // namespace

void AlgoConfig::validate() const {
    if (max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be >= 1");
    if (!(epsilon_floor > 0.0)) throw Error(ErrorCode::InvalidConfig, "epsilon_floor must be > 0");
    if (keep_every < 1) throw Error(ErrorCode::InvalidConfig, "keep_every must be >= 1");
    if (const auto* f = std::get_if<FixedIterations>(&stop); f && f->count < 1) {
        throw Error(ErrorCode::InvalidConfig, "iteration count must be >= 1");
    }
    if (const auto* r = std::get_if<RankStable>(&stop); r && (r->window < 1 || r->check_every < 1)) {
        throw Error(ErrorCode::InvalidConfig, "rank-stable window and check interval must be >= 1");
    }
}

Vector diversification(const BinaryMatrix& m) { return m.values().row_sums(); }
Vector ubiquity(const BinaryMatrix& m) { return m.values().col_sums(); }

Vector raw_country_update(const Matrix& m, std::span<const double> products) {
    if (products.size() != m.cols()) throw Error(ErrorCode::LengthMismatch, "product vector size");
    Vector out(m.rows(), 0.0);
    for (std::size_t c = 0; c < m.rows(); ++c) {
        double s = 0.0;
        for (std::size_t p = 0; p < m.cols(); ++p) s += m(c, p) * products[p];
        out[c] = s;
    }
    return out;
}

Vector raw_product_update(const Matrix& m, std::span<const double> countries) {
    if (countries.size() != m.rows()) throw Error(ErrorCode::LengthMismatch, "country vector size");
    Vector denom(m.cols(), 0.0);
    for (std::size_t c = 0; c < m.rows(); ++c) {
        const double inv = 1.0 / countries[c];
        for (std::size_t p = 0; p < m.cols(); ++p) denom[p] += m(c, p) * inv;
    }
    for (double& d : denom) d = 1.0 / d;
    return denom;
}

double normalizer(std::span<const double> v, Normalization kind) {
    return kind == Normalization::ArithmeticMean ? arithmetic_mean(v) : geometric_mean(v);
}

StepResult step(const Matrix& m, std::span<const double> countries,
                std::span<const double> products, Normalization kind) {
    require_pruned(m);
    if (countries.size() != m.rows() || products.size() != m.cols()) {
        throw Error(ErrorCode::LengthMismatch, "score vectors do not match matrix shape");
    }
    for (double v : countries)
        if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidConfig, "invalid country score");
    for (double v : products)
        if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidConfig, "invalid product score");
    return unchecked_step(m, countries, products, kind);
}

IterationTrace run(const Matrix& m, const AlgoConfig& config) {
    config.validate();
    require_pruned(m);

    Vector countries(m.rows(), 1.0);
    Vector products(m.cols(), 1.0);
    Normalizers initial;
    if (config.init == Init::Degree) {
        countries = m.row_sums();
        products = m.col_sums();
        initial = {normalizer(countries, config.normalization),
                   normalizer(products, config.normalization)};
        divide(countries, initial.country);
        divide(products, initial.product);
    }

    return detail::drive(std::move(countries), std::move(products), initial, config,
                         [&](const Vector& c, const Vector& p) {
                             return unchecked_step(m, c, p, config.normalization);
                         });
}

Vector log_scores(std::span<const double> v, double epsilon_floor) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(std::max(v[i], epsilon_floor));
    return out;
}

Vector standardize(std::span<const double> v) {
    if (v.size() < 2) throw Error(ErrorCode::DegenerateDistribution, "need at least 2 scores");
    const double mean = arithmetic_mean(v);
    const double sd = population_stddev(v);
    if (!(sd > 0.0)) throw Error(ErrorCode::DegenerateDistribution, "zero standard deviation");
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
    return out;
}

} // namespace ecx
