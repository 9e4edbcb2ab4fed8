#pragma once

// Deliberately naive reference implementations used only by the tests.
// Everything is written from the formulas with nested vectors and long
// double, sharing no code with the library.

#include <cmath>
#include <vector>

namespace oracle {

using Grid = std::vector<std::vector<long double>>;
using Vec = std::vector<long double>;

inline Grid rca(const Grid& x) {
    const std::size_t nc = x.size(), np = x[0].size();
    long double total = 0;
    Vec xc(nc, 0), xp(np, 0);
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t p = 0; p < np; ++p) {
            xc[c] += x[c][p];
            xp[p] += x[c][p];
            total += x[c][p];
        }
    Grid out(nc, Vec(np));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t p = 0; p < np; ++p) out[c][p] = (x[c][p] / xc[c]) / (xp[p] / total);
    return out;
}

// Fitness-Complexity map with arithmetic-mean normalization, ones init.
struct FitnessState {
    Vec f, q;
};

inline FitnessState fitness(const Grid& m, std::size_t iterations) {
    const std::size_t nc = m.size(), np = m[0].size();
    FitnessState s{Vec(nc, 1), Vec(np, 1)};
    for (std::size_t n = 0; n < iterations; ++n) {
        Vec f(nc, 0), q(np, 0);
        for (std::size_t c = 0; c < nc; ++c)
            for (std::size_t p = 0; p < np; ++p) f[c] += m[c][p] * s.q[p];
        for (std::size_t p = 0; p < np; ++p) {
            long double d = 0;
            for (std::size_t c = 0; c < nc; ++c) d += m[c][p] / s.f[c];
            q[p] = 1 / d;
        }
        long double mf = 0, mq = 0;
        for (auto v : f) mf += v;
        for (auto v : q) mq += v;
        mf /= nc;
        mq /= np;
        for (auto& v : f) v /= mf;
        for (auto& v : q) v /= mq;
        s = {f, q};
    }
    return s;
}

} // namespace oracle
