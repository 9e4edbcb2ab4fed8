#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecx/fitness.hpp"
#include "ecx/trade.hpp"

namespace ecx {

struct RankReport {
    Labels labels;
    Vector scores_a;
    Vector scores_b;
    Vector ranks_a; // 1 = highest, ties averaged
    Vector ranks_b;
    double spearman = 0.0;
    std::optional<double> pearson; // empty when either score vector is constant
    double max_rank_displacement = 0.0;
    std::size_t discordant_pairs = 0;
};

/// Spearman is the Pearson correlation of average ranks; identical rankings
/// (including two all-tied vectors) give exactly 1. Throws
/// DegenerateDistribution when only one side is constant.
RankReport rank_correlations(std::span<const double> a, std::span<const double> b,
                             Labels labels = {});

/// Spearman only, with scores closer than `rel_tol` treated as tied.
double tolerant_spearman(std::span<const double> a, std::span<const double> b, double rel_tol);

struct EquivalenceReport {
    std::size_t iterations = 0;
    Vector country_deviation; // index N: F^(2N) vs X_c^N
    Vector product_deviation; // index N: 1/Q^(2N) vs X_p^N
    double max_deviation = 0.0;
    // Scores within the check tolerance count as ties.
    double spearman = 0.0;           // at N = iterations
    double converged_spearman = 0.0; // at N = converged_iterations
};

/// Max |a_i/b_i - 1| after scaling both vectors to unit geometric mean.
double proportionality_deviation(std::span<const double> a, std::span<const double> b);

/// Runs the Fitness map (arithmetic mean) and the ECI+ map (geometric mean)
/// side by side on the same extensive matrix and checks that every even
/// Fitness iterate is proportional to the matching ECI+ iterate.
/// Throws EquivalenceViolation naming the first offending iteration.
EquivalenceReport equivalence_check(const ExportMatrix& x, std::size_t iterations, double tol,
                                    std::size_t converged_iterations = 200);

/// Ranking after one iteration from degree init vs. 200 iterations from
/// ones init, both on the binary matrix.
RankReport one_iteration_anomaly(const BinaryMatrix& m);
RankReport one_iteration_anomaly(const ExportMatrix& x, double threshold = 1.0);

/// Pearson correlation between diversification(M) and F.
double diversity_correlation(const BinaryMatrix& m, std::span<const double> fitness);

/// Pearson correlation between sum_p X_cp/X_p and the converged X_c^inf.
double offset_correlation(const ExportMatrix& x, std::size_t iterations = 200);

struct InitInvariance {
    double spearman = 0.0;
    bool quasi_zero = false; // some converged score fell below the threshold
    double min_score = 0.0;
};

/// Converged ones-init vs degree-init country ranking on M.
InitInvariance init_invariance(const Matrix& m, std::size_t iterations = 200,
                               double quasi_zero_threshold = 1e-6);

struct ScatterRow {
    std::string label;
    double x = 0.0;
    double y = 0.0;
    bool operator==(const ScatterRow&) const = default;
};

using ScatterTable = std::vector<ScatterRow>;

ScatterTable scatter_table(std::span<const double> x, std::span<const double> y,
                           const Labels& labels);

enum class ScatterPreset {
    StandardizedOneIteration, // ECI+ vs z(Fitness after 1 iteration, degree init)
    StandardizedConverged,    // ECI+ vs z(Fitness after 200 iterations, ones init)
    LogConverged,             // ECI+ vs log(Fitness after 200 iterations, ones init)
};

/// ECI+ on the pruned extensive matrix against Fitness on its binarization,
/// restricted to countries that survive binarization.
ScatterTable scatter_preset(const ExportMatrix& x, ScatterPreset preset, double threshold = 1.0);

} // namespace ecx
