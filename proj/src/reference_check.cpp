#include "ecx/reference_check.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ecx/analysis.hpp"
#include "ecx/fitness.hpp"

namespace ecx {

std::string canonical_country(const std::string& label) {
    static const std::map<std::string, std::string> aliases{
        {"276", "DEU"}, {"Germany", "DEU"},
        {"156", "CHN"}, {"China", "CHN"},
        {"380", "ITA"}, {"381", "ITA"}, {"Italy", "ITA"},
        {"392", "JPN"}, {"Japan", "JPN"},
        {"840", "USA"}, {"842", "USA"}, {"United States", "USA"}, {"USA", "USA"},
        {"300", "GRC"}, {"Greece", "GRC"},
    };
    auto it = aliases.find(label);
    return it == aliases.end() ? label : it->second;
}

ReferenceCheck reference_check(const ExportMatrix& x, std::size_t iterations) {
    const ExportMatrix pruned = prune(x).matrix;
    const BinaryMatrix m = binarize(rca(pruned)).matrix;

    AlgoConfig config;
    config.stop = FixedIterations{iterations};
    const Vector fitness = run(m, config).final_countries();

    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });

    ReferenceCheck r;
    r.countries = m.num_countries();
    r.products = m.num_products();
    for (std::size_t i = 0; i < std::min<std::size_t>(5, order.size()); ++i) {
        r.top5.push_back(canonical_country(m.countries()[order[i]]));
    }
    r.top5_order_matches = r.top5 == r.expected_top5;
    Labels got = r.top5, want = r.expected_top5;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    r.top5_set_matches = got == want;

    for (std::size_t i = 0; i < order.size(); ++i) {
        if (canonical_country(m.countries()[order[i]]) == "GRC") r.greece_rank = i + 1;
    }
    r.greece_matches = r.greece_rank == r.expected_greece_rank;

    r.offset_correlation = offset_correlation(pruned, iterations);
    r.offset_matches = std::abs(r.offset_correlation - r.expected_offset_correlation) <= r.offset_tolerance;
    return r;
}

} // namespace ecx
