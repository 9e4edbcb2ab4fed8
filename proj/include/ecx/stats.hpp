#pragma once

#include <span>

#include "ecx/matrix.hpp"

namespace ecx {

double arithmetic_mean(std::span<const double> v);

/// exp(mean(log v)); requires strictly positive entries.
double geometric_mean(std::span<const double> v);

/// Population standard deviation.
double population_stddev(std::span<const double> v);

/// Throws DegenerateDistribution if either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// Rank 1 = highest score; tied scores share the average of their ranks.
Vector average_ranks(std::span<const double> scores);

/// As above, but neighbours (in sorted order) within `rel_tol` relative
/// distance are chained into one tie group.
Vector average_ranks(std::span<const double> scores, double rel_tol);

/// Number of pairs ordered strictly oppositely by a and b.
std::size_t discordant_pairs(std::span<const double> a, std::span<const double> b);

} // namespace ecx
