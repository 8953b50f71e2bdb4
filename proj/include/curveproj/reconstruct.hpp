#pragma once

// Rational-function recovery from exact data:
//   * ratfun_reconstruct — Cauchy interpolation from point samples via
//     extended Euclid on (prod (t - t_i), interpolant);
//   * pade_from_series — the same Euclidean scheme on (tau^K, series), used
//     to turn a truncated power-series root of a bivariate polynomial into a
//     rational function.
// Every returned function is re-checked against all input data exactly.

#include <optional>
#include <utility>
#include <vector>

#include "curveproj/ratfun.hpp"

namespace curveproj {

namespace detail {

// Extended Euclid on (a, b), stopped at the first remainder of degree <=
// num_bound; returns (r, v) with r = u*a + v*b, i.e. r/v == b (mod a).
inline std::pair<Poly, Poly> euclid_until(const Poly& a, const Poly& b, int num_bound) {
    Poly r0 = a, r1 = b;
    Poly v0, v1(Rat(1));
    while (!r1.is_zero() && r1.degree() > num_bound) {
        auto [q, r2] = r0.divmod(r1);
        Poly v2 = v0 - q * v1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    return {r1, v1};
}

} // namespace detail

// Unique rational function with max(deg num, deg den) <= degree_bound passing
// through all samples, or nullopt when no such function exists.
// Requires at least 2*degree_bound + 2 samples at pairwise distinct abscissas.
inline std::optional<RatFun> ratfun_reconstruct(const std::vector<std::pair<Rat, Rat>>& samples,
                                                int degree_bound) {
    if (degree_bound < 1) throw error("BadDegreeBound", "degree bound must be >= 1");
    if (static_cast<int>(samples.size()) < 2 * degree_bound + 2)
        throw error("NotEnoughSamples", "need at least 2*degree_bound+2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first) throw duplicate_abscissa_error();

    Poly f = poly_interpolate(samples);
    Poly m(Rat(1));
    for (const auto& [x, y] : samples) m *= Poly(std::vector<Rat>{-x, Rat(1)});

    auto [r, v] = detail::euclid_until(m, f, degree_bound);
    if (v.is_zero()) return std::nullopt;
    if (v.degree() > degree_bound) return std::nullopt;
    if (poly_gcd(r, v).degree() > 0) return std::nullopt;

    RatFun psi(r, v);
    for (const auto& [x, y] : samples) {
        auto val = psi.eval(x);
        if (!val || *val != y) return std::nullopt;
    }
    return psi;
}

// [num_bound/den_bound] Pade approximant of a truncated series (ascending
// coefficients, order = series.size()); requires num+den bounds < order.
// The result is certified to match the series through the given order.
inline std::optional<RatFun> pade_from_series(const std::vector<Rat>& series, int num_bound,
                                              int den_bound) {
    int order = static_cast<int>(series.size());
    if (num_bound + den_bound + 1 > order)
        throw error("NotEnoughSamples", "series too short for requested Pade orders");
    std::vector<Rat> xk(static_cast<std::size_t>(order) + 1, Rat(0));
    xk.back() = Rat(1);
    Poly m(std::move(xk)); // tau^order
    Poly f((std::vector<Rat>(series)));

    auto [r, v] = detail::euclid_until(m, f, num_bound);
    if (v.is_zero() || v.degree() > den_bound) return std::nullopt;
    if (v.coeff(0).is_zero()) return std::nullopt; // denominator must be a unit at 0
    if (poly_gcd(r, v).degree() > 0) return std::nullopt;

    // certify: v * series == r (mod tau^order)
    for (int k = 0; k < order; ++k) {
        Rat acc(0);
        for (int j = 0; j <= std::min(k, v.degree()); ++j)
            acc += v.coeff(j) * series[static_cast<std::size_t>(k - j)];
        if (acc != r.coeff(k)) return std::nullopt;
    }
    return RatFun(r, v);
}

} // namespace curveproj
