#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecx/trade.hpp"

namespace ecx {

/// Comparison of a user-supplied real trade dataset (e.g. BACI 2010) against
/// the published Fitness facts: top-5 ranking, Greece's rank and the
/// correlation between the ECI+ size offset and X_c^inf. Country labels may
/// be ISO3 codes, ISO numeric codes or English names.
struct ReferenceCheck {
    std::size_t countries = 0;
    std::size_t products = 0;
    Labels top5;
    Labels expected_top5{"DEU", "CHN", "ITA", "JPN", "USA"};
    bool top5_order_matches = false;
    bool top5_set_matches = false;
    std::optional<std::size_t> greece_rank;
    std::size_t expected_greece_rank = 34;
    bool greece_matches = false;
    double offset_correlation = 0.0;
    double expected_offset_correlation = 0.97;
    // Half-width of the two-decimal rounding interval of the published value.
    double offset_tolerance = 0.005;
    bool offset_matches = false;

    bool all_match() const { return top5_order_matches && greece_matches && offset_matches; }
};

/// Maps a dataset label onto an ISO3 code when it is one of the countries
/// named in the check; otherwise returns the label unchanged.
std::string canonical_country(const std::string& label);

/// Fitness: binarized RCA, ones init, `iterations` steps. Offset correlation:
/// ECI+ with the same iteration count on the pruned extensive matrix.
ReferenceCheck reference_check(const ExportMatrix& x, std::size_t iterations = 200);

} // namespace ecx
