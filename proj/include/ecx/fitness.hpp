#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "ecx/matrix.hpp"
#include "ecx/trade.hpp"

namespace ecx {

enum class Init { Ones, Degree };
enum class Normalization { ArithmeticMean, GeometricMean };

struct FixedIterations {
    std::size_t count = 200;
};

/// Stop once the country ranking has not changed for `window` consecutive
/// checks, checking every `check_every` iterations.
struct RankStable {
    std::size_t window = 10;
    std::size_t check_every = 1;
};

using StopRule = std::variant<FixedIterations, RankStable>;

struct AlgoConfig {
    Init init = Init::Ones;
    Normalization normalization = Normalization::ArithmeticMean;
    StopRule stop = FixedIterations{};
    std::size_t max_iterations = 100000;
    // Only ever applied inside logarithms.
    double epsilon_floor = 1e-300;
    // Trace thinning; the initial and final iterates are always kept.
    std::size_t keep_every = 1;

    void validate() const;
};

struct Normalizers {
    double country = 1.0;
    double product = 1.0;
};

/// Score history of one run. Entry i of `countries`/`products`/`normalizers`
/// belongs to iteration `kept[i]`; iteration 0 is the normalized initial
/// condition.
struct IterationTrace {
    std::vector<std::size_t> kept;
    std::vector<Vector> countries;
    std::vector<Vector> products;
    std::vector<Normalizers> normalizers;
    std::size_t iterations = 0;
    bool converged = false;

    const Vector& final_countries() const { return countries.back(); }
    const Vector& final_products() const { return products.back(); }
};

struct StepResult {
    Vector countries;
    Vector products;
    Normalizers normalizers;
};

Vector diversification(const BinaryMatrix& m);
Vector ubiquity(const BinaryMatrix& m);

/// F'_c = sum_p M_cp Q_p. No normalization.
Vector raw_country_update(const Matrix& m, std::span<const double> products);

/// Q'_p = 1 / sum_c (M_cp / F_c). No normalization.
Vector raw_product_update(const Matrix& m, std::span<const double> countries);

double normalizer(std::span<const double> v, Normalization kind);

/// One simultaneous (Jacobi) update: both raw updates read the incoming
/// pair, then each result is divided by its configured mean.
StepResult step(const Matrix& m, std::span<const double> countries,
                std::span<const double> products, Normalization kind);

IterationTrace run(const Matrix& m, const AlgoConfig& config);
inline IterationTrace run(const LabeledTable& m, const AlgoConfig& config) {
    return run(m.values(), config);
}

/// log(max(v, floor)) elementwise.
Vector log_scores(std::span<const double> v, double epsilon_floor = 1e-300);

/// Population z-scores. Throws DegenerateDistribution for constant input.
Vector standardize(std::span<const double> v);

} // namespace ecx
