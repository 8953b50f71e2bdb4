#pragma once

// Real-root isolation (Descartes + bisection on squarefree integer
// polynomials, exact rational interval endpoints) and exact rational-root
// extraction. Rational roots are located by Stern-Brocot descent inside each
// isolating interval: the simplest rational in the interval either is the
// root, or its denominator eventually exceeds the lc-divisibility bound,
// which certifies that the root is irrational.

#include <algorithm>
#include <utility>
#include <vector>

#include "curveproj/poly.hpp"

namespace curveproj {

struct RootInterval {
    Rat lo, hi, mid;
    bool exact = false; // lo == hi == mid == root
};

namespace detail {

inline int sign_variations(const IPoly& p) {
    int v = 0, last = 0;
    for (const auto& c : p) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// p(x+1), integer Taylor shift (Pascal accumulation).
inline IPoly ipoly_shift1(IPoly p) {
    int d = ipoly_degree(p);
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j)
            p[static_cast<std::size_t>(j)] += p[static_cast<std::size_t>(j) + 1];
    return p;
}

inline IPoly ipoly_reverse(IPoly p) {
    std::reverse(p.begin(), p.end());
    ipoly_trim(p);
    return p;
}

// Number of sign variations of (x+1)^d p(1/(x+1)); Descartes test for (0,1).
inline int variations_01(const IPoly& p) { return sign_variations(ipoly_shift1(ipoly_reverse(p))); }

// 2^d p(x/2): maps roots in (0,1) of the result to roots in (0,1/2) of p.
inline IPoly ipoly_half_left(const IPoly& p) {
    IPoly r = p;
    int d = ipoly_degree(p);
    for (int i = 0; i <= d; ++i) r[static_cast<std::size_t>(i)] <<= static_cast<unsigned>(d - i);
    return r;
}

struct DyadicInterval {
    // interval (c / 2^k, (c+1) / 2^k) within (0,1)
    Int c;
    unsigned k;
};

// Isolating intervals for the roots of squarefree p inside (0,1).
// Exact dyadic roots found along the way are appended to `exact`.
inline void vca_01(const IPoly& p, const Int& c, unsigned k, std::vector<DyadicInterval>& out,
                   std::vector<std::pair<Int, unsigned>>& exact) {
    if (k > 100000) throw internal_error("root isolation depth exceeded (input not squarefree?)");
    int v = variations_01(p);
    if (v == 0) return;
    if (v == 1) {
        out.push_back({c, k});
        return;
    }
    IPoly left = ipoly_half_left(p);
    IPoly right = ipoly_shift1(left);
    // midpoint of the current interval is root of `left` at x=1
    if (ipoly_eval(right, Int(0)) == 0) exact.emplace_back(2 * c + 1, k + 1);
    vca_01(left, 2 * c, k + 1, out, exact);
    vca_01(right, 2 * c + 1, k + 1, out, exact);
}

inline Rat dyadic(const Int& c, unsigned k) {
    Int den = 1;
    den <<= k;
    return Rat(c, den);
}

} // namespace detail

// Cauchy bound, rounded up to a power of two.
inline Rat root_bound(const Poly& f) {
    if (f.is_zero()) throw zero_polynomial_error();
    Rat m(0);
    Rat lc = f.lc().abs();
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, f.coeff(i).abs() / lc);
    Rat b = m + Rat(1);
    Rat p(1);
    while (p < b) p = p * Rat(2);
    return p;
}

// Isolating intervals of width <= precision covering all real roots of a
// squarefree polynomial, sorted ascending. Deterministic.
inline std::vector<RootInterval> isolate_real_roots(const Poly& f, const Rat& precision) {
    if (f.is_zero()) throw zero_polynomial_error("root isolation of the zero polynomial");
    if (precision.sign() <= 0) throw error("BadPrecision", "precision must be positive");
    std::vector<RootInterval> out;
    if (f.degree() <= 0) return out;

    IPoly h = to_integer_primitive(f);

    // exact root at zero
    if (h[0] == 0) {
        out.push_back({Rat(0), Rat(0), Rat(0), true});
        std::size_t k = 0;
        while (k < h.size() && h[k] == 0) ++k;
        h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (ipoly_degree(h) <= 0) {
        std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
        return out;
    }

    Rat bound = root_bound(from_integer(h));
    // q(u) = h(bound * u) clears to integers since bound is a power of two
    auto isolate_side = [&](bool negative) {
        IPoly q = h;
        if (negative)
            for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
        // scale: coefficient i gets bound^i; bound = 2^e
        Rat b = bound;
        Int bi = b.num(); // power of two, den == 1
        Int mult = 1;
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] *= mult;
            mult *= bi;
        }
        ipoly_make_primitive(q);
        std::vector<detail::DyadicInterval> iv;
        std::vector<std::pair<Int, unsigned>> ex;
        detail::vca_01(q, Int(0), 0, iv, ex);
        for (const auto& [c, k] : ex) {
            Rat r = detail::dyadic(c, k) * bound;
            if (negative) r = -r;
            out.push_back({r, r, r, true});
        }
        for (const auto& d : iv) {
            Rat lo = detail::dyadic(d.c, d.k) * bound;
            Rat hi = detail::dyadic(d.c + 1, d.k) * bound;
            if (negative) std::swap(lo, hi), lo = -lo, hi = -hi;
            out.push_back({lo, hi, (lo + hi) / Rat(2), false});
        }
    };
    isolate_side(false);
    isolate_side(true);

    // refine to requested width by sign bisection
    Poly hf = from_integer(h);
    for (auto& ri : out) {
        if (ri.exact) continue;
        Rat lo = ri.lo, hi = ri.hi;
        int slo = hf.eval(lo).sign();
        int shi = hf.eval(hi).sign();
        // interval endpoints are never roots of a squarefree poly here except
        // for previously harvested exact dyadic roots; nudge if needed
        while (slo == 0) {
            lo = (lo * Rat(3) + hi) / Rat(4);
            slo = hf.eval(lo).sign();
        }
        while (shi == 0) {
            hi = (lo + hi * Rat(3)) / Rat(4);
            shi = hf.eval(hi).sign();
        }
        while (hi - lo > precision) {
            Rat m = (lo + hi) / Rat(2);
            int sm = hf.eval(m).sign();
            if (sm == 0) {
                lo = hi = m;
                ri.exact = true;
                break;
            }
            if (sm == slo)
                lo = m;
            else
                hi = m;
        }
        ri.lo = lo;
        ri.hi = hi;
        ri.mid = (lo + hi) / Rat(2);
    }

    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// Minimal-denominator rational in the open interval (a, b). Deterministic:
// when integers qualify, the one closest to zero (ties toward positive).
inline Rat simplest_rational_between(const Rat& a, const Rat& b) {
    if (!(a < b)) throw internal_error("simplest_rational_between needs a < b");
    Int lo = a.floor() + 1;
    Int hi = b.is_integer() ? b.num() - 1 : b.floor();
    if (lo <= hi) {
        if (lo <= 0 && 0 <= hi) return Rat(0);
        return lo > 0 ? Rat(lo) : Rat(hi);
    }
    if (b.sign() <= 0) return -simplest_rational_between(-b, -a);
    // now floor(a) == floor(b) and the interval is inside (n, n+1), n >= 0
    Int n = a.floor();
    Rat fa = a - Rat(n), fb = b - Rat(n);
    if (fa.is_zero()) {
        // (n, n + fb): pick n + 1/k with smallest k
        Int k = (Rat(1) / fb).floor() + 1;
        return Rat(n) + Rat(Int(1), k);
    }
    Rat inner = simplest_rational_between(Rat(1) / fb, Rat(1) / fa);
    return Rat(n) + Rat(1) / inner;
}

namespace detail {

// Search one isolating interval of the squarefree polynomial hs for a
// rational root with denominator <= den_bound. Alternates Stern-Brocot
// candidates with plain bisection so both the candidate denominator and the
// interval width converge quickly.
inline std::optional<Rat> rational_root_in_interval(const Poly& hs, Rat lo, Rat hi,
                                                    const Int& den_bound) {
    int slo = hs.eval(lo).sign();
    while (slo == 0) {
        lo = (lo * Rat(3) + hi) / Rat(4);
        slo = hs.eval(lo).sign();
    }
    int shi = hs.eval(hi).sign();
    while (shi == 0) {
        hi = (lo + hi * Rat(3)) / Rat(4);
        shi = hs.eval(hi).sign();
    }
    Rat width_cut = Rat(Int(1), den_bound * den_bound);
    bool stern = true;
    while (true) {
        Rat r = stern ? simplest_rational_between(lo, hi) : (lo + hi) / Rat(2);
        if (stern) {
            if (r.den() > den_bound) return std::nullopt; // every rational inside is too complex
        }
        Rat v = hs.eval(r);
        if (v.is_zero()) return r;
        if (stern && hi - lo < width_cut) return std::nullopt; // at most one candidate fits, and it failed
        if (v.sign() == slo)
            lo = r;
        else
            hi = r;
        stern = !stern;
    }
}

} // namespace detail

// Exactly the rational roots of f, each once, ascending.
inline std::vector<Rat> rational_roots(const Poly& f) {
    if (f.is_zero()) throw zero_polynomial_error("rational roots of the zero polynomial");
    std::vector<Rat> out;
    if (f.degree() <= 0) return out;

    IPoly h = to_integer_primitive(f);
    if (h[0] == 0) {
        out.push_back(Rat(0));
        std::size_t k = 0;
        while (k < h.size() && h[k] == 0) ++k;
        h.erase(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(k));
    }
    if (ipoly_degree(h) <= 0) return out;

    Int den_bound = h.back();
    if (den_bound < 0) den_bound = -den_bound;

    Poly hs = squarefree_part(from_integer(h));
    Poly hi_int = from_integer(to_integer_primitive(hs));

    for (const auto& ri : isolate_real_roots(hi_int, Rat(1, 4))) {
        if (ri.exact) {
            out.push_back(ri.lo);
            continue;
        }
        auto r = detail::rational_root_in_interval(hi_int, ri.lo, ri.hi, den_bound);
        if (r) out.push_back(*r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace curveproj
