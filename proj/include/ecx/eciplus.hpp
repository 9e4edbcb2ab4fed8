#pragma once

#include <span>

#include "ecx/fitness.hpp"
#include "ecx/trade.hpp"

namespace ecx {

/// Fixed-N(200), ones init, geometric-mean normalization.
AlgoConfig eciplus_default_config();

struct EciPlusResult {
    Labels countries;
    Labels products;
    Vector xc_inf;
    Vector xp_inf;
    Vector product_totals; // X_p in the matrix's currency unit
    Vector eci_plus;
    Vector pci_plus;
    IterationTrace trace;
};

/// Country iterate X_c^N and product iterate X_p^N, each closing over two
/// half-steps of the extensive matrix:
///   X_c^N = sum_p X_cp / (sum_c' X_c'p / X_c'^{N-1})
///   X_p^N = sum_c X_cp / (sum_p' X_cp' / X_p'^{N-1})
/// Trace countries hold X_c^N, trace products hold X_p^N.
IterationTrace eci_iterate(const ExportMatrix& x, const AlgoConfig& config = eciplus_default_config());

/// sum_p X_cp / X_p for each country: the sum of the country's shares.
Vector eci_offset_argument(const ExportMatrix& x);

/// log(xc_inf_c) - log(sum_p X_cp / X_p)
Vector eci_plus_scores(const ExportMatrix& x, std::span<const double> xc_inf);

/// log(X_p) - log(xp_inf_p). Depends on the currency unit through X_p.
Vector pci_plus_scores(const ExportMatrix& x, std::span<const double> xp_inf);

EciPlusResult compute_eci_plus(const ExportMatrix& x,
                               const AlgoConfig& config = eciplus_default_config());

} // namespace ecx
