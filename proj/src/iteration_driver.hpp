#pragma once

// Shared run loop for the Fitness and ECI+ engines: trace recording,
// stopping rules and the convergence flag. The maps themselves live in the
// engines.

#include <variant>

#include "ecx/error.hpp"
#include "ecx/fitness.hpp"
#include "ecx/stats.hpp"

namespace ecx::detail {

class RankTracker {
public:
    explicit RankTracker(std::size_t window) : window_(window) {}

    // Returns the number of consecutive unchanged checks.
    std::size_t observe(std::span<const double> scores) {
        Vector ranks = average_ranks(scores);
        if (!last_.empty() && ranks == last_) ++stable_;
        else stable_ = 0;
        last_ = std::move(ranks);
        return stable_;
    }

    bool stable() const { return stable_ >= window_; }

private:
    std::size_t window_;
    std::size_t stable_ = 0;
    Vector last_;
};

template <class StepFn>
IterationTrace drive(Vector countries, Vector products, Normalizers initial,
                     const AlgoConfig& config, StepFn&& advance) {
    config.validate();
    IterationTrace trace;
    auto record = [&](std::size_t it, const Vector& c, const Vector& p, Normalizers n) {
        trace.kept.push_back(it);
        trace.countries.push_back(c);
        trace.products.push_back(p);
        trace.normalizers.push_back(n);
    };
    record(0, countries, products, initial);

    const auto* fixed = std::get_if<FixedIterations>(&config.stop);
    const RankStable rule = fixed ? RankStable{} : std::get<RankStable>(config.stop);
    RankTracker tracker(rule.window);
    tracker.observe(countries);

    std::size_t it = 0;
    bool fired = false;
    Normalizers last_norm = initial;
    while (true) {
        if (fixed && it >= fixed->count) break;
        if (!fixed && it >= config.max_iterations) break;

        StepResult next = advance(countries, products);
        countries = std::move(next.countries);
        products = std::move(next.products);
        last_norm = next.normalizers;
        ++it;

        if (it % rule.check_every == 0) {
            tracker.observe(countries);
            if (!fixed && tracker.stable()) fired = true;
        }
        const bool last = fired || (fixed && it == fixed->count);
        if (it % config.keep_every == 0 || last) {
            record(it, countries, products, last_norm);
        }
        if (fired) break;
    }

    if (!fixed && !fired) {
        throw Error(ErrorCode::MaxIterationsExceeded,
                    "ranking did not stabilise within " + std::to_string(config.max_iterations) +
                        " iterations");
    }
    // Keep the final iterate even when it falls off the thinning grid.
    if (trace.kept.back() != it) record(it, countries, products, last_norm);
    trace.iterations = it;
    trace.converged = tracker.stable();
    return trace;
}

} // namespace ecx::detail
