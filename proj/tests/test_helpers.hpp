#pragma once

// Shared helpers for the test suites: coordinate-lambda field builders and
// seeded random band-limited fields.

#include <cmath>
#include <functional>
#include <random>

#include "qnsch/field.hpp"
#include "qnsch/spectral.hpp"

namespace qnsch::testing {

inline void decode_point(const Grid& g, std::size_t flat, double* x) {
    std::size_t rem = flat;
    for (int a = g.dim - 1; a >= 0; --a) {
        x[a] = static_cast<double>(rem % static_cast<std::size_t>(g.n)) / g.n;
        rem /= static_cast<std::size_t>(g.n);
    }
}

template <typename F>
Field field_from(const Grid& g, F&& f) {
    Field out(g);
    double x[3] = {0, 0, 0};
    for (std::size_t p = 0; p < out.size(); ++p) {
        decode_point(g, p, x);
        out[p] = f(x);
    }
    return out;
}

template <typename F0, typename F1>
VectorField vector_field_from(const Grid& g, F0&& f0, F1&& f1) {
    VectorField out(g);
    out[0] = field_from(g, f0);
    out[1] = field_from(g, f1);
    return out;
}

// random zero-mean field, band-limited below the dealias cutoff
inline Field random_band_limited(const SpectralOps& ops, unsigned seed,
                                 double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Field f(ops.grid());
    for (std::size_t p = 0; p < f.size(); ++p) f[p] = dist(rng);
    f = ops.dealias(f);
    f = SpectralOps::zero_mean(f);
    const double m = max_abs(f);
    return m > 0 ? (amplitude / m) * f : f;
}

inline double rel_diff_l2(const Field& a, const Field& b) {
    const double den = std::max(l2_norm(a), l2_norm(b));
    return den > 0 ? l2_norm(a - b) / den : 0.0;
}

inline double rel_diff_l2(const VectorField& a, const VectorField& b) {
    const double den = std::max(l2_norm(a), l2_norm(b));
    return den > 0 ? l2_norm(a - b) / den : 0.0;
}

} // namespace qnsch::testing
