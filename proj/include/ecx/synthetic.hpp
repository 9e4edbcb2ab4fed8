#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ecx/trade.hpp"

namespace ecx {

/// Seed of the canonical nested-plus-noise matrix used by the tests, the
/// acceptance suite and `ecx generate --kind nested`.
inline constexpr std::uint64_t kCanonicalSeed = 2017;

/// mt19937_64 with hand-rolled distribution mappings so generated data is
/// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(); // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t uniform_index(std::size_t lo, std::size_t hi); // inclusive
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Triangular nested 0/1 pattern (country c exports the first
/// ceil(products * (countries - c) / countries) products) with each bit flipped
/// independently with probability `flip`, then pruned.
BinaryMatrix nested_noise_matrix(std::size_t countries = 10, std::size_t products = 20,
                                 double flip = 0.15, std::uint64_t seed = kCanonicalSeed);

/// Dense positive matrix with entries log-uniform in [lo, hi].
ExportMatrix log_uniform_matrix(Rng& rng, std::size_t countries, std::size_t products,
                                double lo = 1.0, double hi = 1e6);

/// Dense matrix with log-normal entries: country and product size effects plus noise.
ExportMatrix log_normal_matrix(std::size_t countries, std::size_t products, std::uint64_t seed);

/// `count` log-uniform matrices with 5..30 countries and 5..50 products.
std::vector<ExportMatrix> random_corpus(std::size_t count = 100, std::uint64_t seed = 42);

/// Sparse variant of the corpus: entries zeroed with probability `sparsity`
/// before pruning, so binarized versions have nontrivial structure.
std::vector<ExportMatrix> sparse_corpus(std::size_t count, std::uint64_t seed, double sparsity);

} // namespace ecx
