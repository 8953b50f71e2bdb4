#pragma once

// Exact projection detection. Pipeline:
//   1. constraint surface N(t,s): squarefree numerator of
//      det[x1(t)-x2(s); x1'(t); x2'(s)], which every projection's associated
//      polynomial G(t,s) = p(t) - s q(t) divides;
//   2. candidate maps psi = p/q with rational coefficients, recovered by
//      rational-root sampling plus power-series lifting, each certified by
//      exact bivariate divisibility G | N;
//   3. two lucky parameter values pin the eye as the intersection of two
//      witness lines;
//   4. exact certification of the projection identity and the gcd
//      image-equality test, which must agree.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "curveproj/curve.hpp"
#include "curveproj/reconstruct.hpp"
#include "curveproj/roots.hpp"

namespace curveproj {

struct ConstraintSurface {
    BiPoly ncal; // normalized squarefree
    int deg_t = 0;
    int deg_s = 0;
    std::vector<Rat> excluded_t; // rational poles of x1 and vertical asymptotes
};

struct PsiCandidate {
    RatFun psi;
    BiPoly g; // primitive form of p(t) - s q(t)
    bool divisibility_ok = false;
    std::vector<Rat> unlucky_points; // explicit excluded parameter values
    Poly unlucky_poly;               // squarefree; its real roots are excluded too
};

enum class ProjectionKind { Perspective, Parallel };
enum class Certification { Exact, Numeric };

struct ProjectionFinding {
    ProjPoint eye;
    ProjectionKind kind = ProjectionKind::Perspective;
    bool degenerate = false;
    RatFun psi;
    Certification certification = Certification::Exact;
    ProjMatrix matrix;
    std::optional<double> hausdorff;
    std::optional<RatFun> lambda;
};

struct RejectedCandidate {
    RatFun psi;
    std::string reason;
};

struct DetectResult {
    std::vector<ProjectionFinding> findings;
    std::vector<RejectedCandidate> rejected;
};

// ---------------------------------------------------------------------------

inline ConstraintSurface compute_constraint_surface(const CurveParam& c1, const CurveParam& c2) {
    {
        auto q1 = plane_of_curve(c1);
        auto q2 = plane_of_curve(c2);
        if (q1.is_line || q2.is_line) throw line_input_error();
    }

    const auto& t1 = c1.projective();
    const auto& t2 = c2.projective();
    auto diff = difference_numerators(c1, c2); // row 1, bivariate

    std::array<BiPoly, 3> row2, row3; // derivative numerators, univariate
    for (std::size_t i = 0; i < 3; ++i) {
        row2[i] = BiPoly::from_poly_t(t1[i].derivative() * t1[3] - t1[i] * t1[3].derivative());
        row3[i] = BiPoly::from_poly_s(t2[i].derivative() * t2[3] - t2[i] * t2[3].derivative());
    }

    BiPoly det = diff[0] * (row2[1] * row3[2] - row2[2] * row3[1]) -
                 diff[1] * (row2[0] * row3[2] - row2[2] * row3[0]) +
                 diff[2] * (row2[0] * row3[1] - row2[1] * row3[0]);

    if (det.is_zero()) throw coplanar_curves_error();

    ConstraintSurface s;
    s.ncal = bipoly_squarefree_part(det);
    s.deg_t = s.ncal.deg_t();
    s.deg_s = s.ncal.deg_s();

    std::set<Rat> excl;
    if (t1[3].degree() > 0)
        for (const auto& r : rational_roots(t1[3])) excl.insert(r);
    Poly lcs = s.ncal.lc_s();
    if (lcs.degree() > 0)
        for (const auto& r : rational_roots(lcs)) excl.insert(r);
    s.excluded_t.assign(excl.begin(), excl.end());
    return s;
}

namespace detail {

// t = t0 is usable for sampling/lifting: the s-degree does not drop and
// N(t0, s) is squarefree (so no singular point of the surface lies on the
// line, and every root is simple).
inline bool good_abscissa(const ConstraintSurface& sf, const Rat& t0) {
    if (sf.ncal.lc_s().eval(t0).is_zero()) return false;
    Poly n = sf.ncal.eval_t(t0);
    return poly_gcd(n, n.derivative()).degree() == 0;
}

// Deterministic stream of candidate sample abscissas: nonnegative integers,
// then negative integers, then half-integers.
inline Rat abscissa_stream(long k) {
    if (k < 200) return Rat(k);
    if (k < 400) return Rat(-(k - 199));
    return Rat(2 * (k - 400) + 1, 2);
}

// --- truncated power series over Q ---------------------------------------

using Series = std::vector<Rat>; // ascending, length == truncation order

inline Series series_from_poly(const Poly& p, std::size_t prec) {
    Series s(prec, Rat(0));
    for (int i = 0; i <= p.degree() && i < static_cast<int>(prec); ++i)
        s[static_cast<std::size_t>(i)] = p.coeff(i);
    return s;
}

inline Series series_mul(const Series& a, const Series& b) {
    std::size_t prec = a.size();
    Series r(prec, Rat(0));
    for (std::size_t i = 0; i < prec; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < prec; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline Series series_sub(const Series& a, const Series& b) {
    Series r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

// a / b with b[0] != 0
inline Series series_div(const Series& a, const Series& b) {
    std::size_t prec = a.size();
    Series q(prec, Rat(0));
    Rat inv = b[0].inverse();
    for (std::size_t k = 0; k < prec; ++k) {
        Rat acc = a[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= q[k - j] * b[j];
        q[k] = acc * inv;
    }
    return q;
}

// Newton-lift the simple root r of N(t0, s) to a series root of
// N(t0 + tau, s) modulo tau^prec.
inline std::optional<Series> lift_series_root(const BiPoly& shifted, const Rat& r,
                                              std::size_t prec) {
    auto cs = shifted.s_coefficients();
    std::vector<Series> coeff(cs.size()), dcoeff;
    for (std::size_t k = 0; k < cs.size(); ++k) coeff[k] = series_from_poly(cs[k], prec);
    dcoeff.resize(cs.size() > 0 ? cs.size() - 1 : 0);
    for (std::size_t k = 1; k < cs.size(); ++k) dcoeff[k - 1] = series_from_poly(cs[k] * Rat(static_cast<long>(k)), prec);

    auto horner = [&](const std::vector<Series>& c, const Series& y) {
        Series acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) acc = series_sub(series_mul(acc, y), series_sub(Series(y.size(), Rat(0)), c[k]));
        return acc;
    };

    Series y(prec, Rat(0));
    y[0] = r;
    std::size_t iters = 1;
    for (std::size_t p = 1; p < prec; p *= 2) ++iters;
    for (std::size_t it = 0; it <= iters; ++it) {
        Series f = horner(coeff, y);
        Series fp = horner(dcoeff, y);
        if (fp[0].is_zero()) return std::nullopt;
        y = series_sub(y, series_div(f, fp));
    }
    // certify the lift
    Series f = horner(coeff, y);
    for (const auto& c : f)
        if (!c.is_zero()) return std::nullopt;
    return y;
}

inline BiPoly associated_polynomial(const RatFun& psi) {
    BiPoly g = BiPoly::from_poly_t(psi.num()) - BiPoly::from_poly_s(Poly::variable()) * BiPoly::from_poly_t(psi.den());
    return g.normalized();
}

} // namespace detail

// Every psi with rational coefficients whose associated polynomial divides
// the constraint surface, sorted by degree then coefficients. Two recovery
// routes feed the exact divisibility certificate: rank-aligned root samples
// across many abscissas, and power-series lifting of each rational root at
// one abscissa (which also catches candidates whose sample ranks cross).
inline std::vector<PsiCandidate> rational_psi_candidates(const ConstraintSurface& surface) {
    std::vector<PsiCandidate> out;
    int D = surface.deg_t;
    if (D < 1 || surface.deg_s < 1) return out;

    std::vector<RatFun> raw;

    // route 1: sample abscissas, collect rational roots, align by rank
    const int want = 2 * D + 2;
    std::vector<Rat> ts;
    std::vector<std::vector<Rat>> roots;
    for (long k = 0; static_cast<int>(ts.size()) < want && k < 1000; ++k) {
        Rat t0 = detail::abscissa_stream(k);
        if (!detail::good_abscissa(surface, t0)) continue;
        ts.push_back(t0);
        roots.push_back(rational_roots(surface.ncal.eval_t(t0)));
    }
    if (static_cast<int>(ts.size()) >= want) {
        std::size_t max_count = 0;
        for (const auto& r : roots) max_count = std::max(max_count, r.size());
        auto try_selection = [&](bool from_low, std::size_t rank) {
            std::vector<std::pair<Rat, Rat>> samples;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (roots[i].size() <= rank) continue;
                std::size_t idx = from_low ? rank : roots[i].size() - 1 - rank;
                samples.emplace_back(ts[i], roots[i][idx]);
            }
            if (static_cast<int>(samples.size()) < want) return;
            samples.resize(static_cast<std::size_t>(want));
            auto psi = ratfun_reconstruct(samples, D);
            if (psi && psi->degree() >= 1) raw.push_back(*psi);
        };
        for (std::size_t rank = 0; rank < max_count; ++rank) {
            try_selection(true, rank);
            try_selection(false, rank);
        }
    }

    // route 2: series lifting at the first good abscissa
    for (long k = 0; k < 1000; ++k) {
        Rat t0 = detail::abscissa_stream(k);
        if (!detail::good_abscissa(surface, t0)) continue;
        std::size_t prec = static_cast<std::size_t>(2 * D + 2);
        BiPoly shifted = surface.ncal.shift_t(t0);
        for (const auto& r : rational_roots(surface.ncal.eval_t(t0))) {
            auto series = detail::lift_series_root(shifted, r, prec);
            if (!series) continue;
            auto pad = pade_from_series(*series, D, D);
            if (!pad || pad->degree() < 1) continue;
            // shift back: psi(t) = pad(t - t0)
            Poly back(std::vector<Rat>{-t0, Rat(1)});
            raw.emplace_back(pad->num().compose(back), pad->den().compose(back));
        }
        break;
    }

    // certify by divisibility, dedupe, sort
    std::vector<PsiCandidate> cands;
    for (const auto& psi : raw) {
        bool seen = false;
        for (const auto& c : cands)
            if (c.psi == psi) seen = true;
        if (seen) continue;
        PsiCandidate c;
        c.psi = psi;
        c.g = detail::associated_polynomial(psi);
        c.divisibility_ok = c.g.divides(surface.ncal);
        if (c.divisibility_ok) cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(),
              [](const PsiCandidate& a, const PsiCandidate& b) { return ratfun_less(a.psi, b.psi); });
    return cands;
}

// Fills the excluded-parameter description of the unlucky set for psi.
inline void unlucky_params(PsiCandidate& cand, const CurveParam& c1, const CurveParam& c2,
                           const ConstraintSurface& surface) {
    std::set<Rat> pts(surface.excluded_t.begin(), surface.excluded_t.end());

    const Poly& w1 = c1.projective()[3];
    if (w1.degree() > 0)
        for (const auto& r : rational_roots(w1)) pts.insert(r); // x1 pole
    if (cand.psi.den().degree() > 0)
        for (const auto& r : rational_roots(cand.psi.den())) pts.insert(r); // psi pole

    Poly bad(Rat(1));
    auto absorb = [&](const Poly& p) {
        if (p.degree() > 0) bad *= squarefree_part(p);
    };

    // psi(t) hits a pole of x2
    const Poly& w2 = c2.projective()[3];
    if (w2.degree() > 0) absorb(RatFun(w2).compose(cand.psi).num());

    // x2(psi(t)) is a self-intersection of C2
    Poly s2 = self_intersection_params(c2);
    if (s2.degree() > 0) absorb(RatFun(s2).compose(cand.psi).num());

    // the pair degenerates when x1(t) == x2(psi(t))
    Poly eq;
    bool eq_any = false;
    for (std::size_t i = 0; i < 3; ++i) {
        RatFun d = c1.coord(i) - c2.coord(i).compose(cand.psi);
        if (d.is_zero()) continue;
        eq = eq_any ? poly_gcd(eq, d.num()) : d.num().monic();
        eq_any = true;
        if (eq.degree() == 0) break;
    }
    if (eq_any && eq.degree() > 0) absorb(eq);

    cand.unlucky_poly = bad.degree() > 0 ? squarefree_part(bad) : Poly(Rat(1));
    for (const auto& r : rational_roots(cand.unlucky_poly)) pts.insert(r);
    cand.unlucky_points.assign(pts.begin(), pts.end());
}

inline bool is_admissible_t(const PsiCandidate& cand, const ConstraintSurface& surface,
                            const Rat& t0) {
    for (const auto& p : cand.unlucky_points)
        if (p == t0) return false;
    if (cand.unlucky_poly.degree() > 0 && cand.unlucky_poly.eval(t0).is_zero()) return false;
    // singular-line test for condition (iv)
    return detail::good_abscissa(surface, t0);
}

// Intersects the two witness lines at lucky parameters t1 != t2.
// nullopt means the lines are skew, so psi fits no projection at this pair.
inline std::optional<ProjPoint> eye_from_lucky_pairs(const PsiCandidate& cand,
                                                     const CurveParam& c1, const CurveParam& c2,
                                                     const Rat& t1, const Rat& t2) {
    auto witness = [&](const Rat& t) {
        ProjPoint p = c1.point_at(t);
        ProjPoint q = c2.point_at(*cand.psi.eval(t));
        return line_through(p, q);
    };
    auto hit = intersect_lines_exact(witness(t1), witness(t2));
    switch (hit.kind) {
        case LineIntersection::Kind::Point:
        case LineIntersection::Kind::AtInfinity:
            return *hit.point;
        case LineIntersection::Kind::Identical:
            throw identical_points_error("witness lines coincide; pick another parameter");
        case LineIntersection::Kind::Skew:
            return std::nullopt;
    }
    return std::nullopt;
}

struct CertifyOutcome {
    std::optional<ProjectionFinding> finding;
    std::string reject_reason;
};

// Exact certification: the three component identities of the projection
// equation with s = psi(t) must agree, and the gcd image-equality test must
// concur. Fills lambda and the projection matrix on success.
inline CertifyOutcome certify_exact(const PsiCandidate& cand, const ProjPoint& eye,
                                    const CurveParam& c1, const CurveParam& c2) {
    auto plq = plane_of_curve(c2);
    if (!plq.plane) return {std::nullopt, "C2 not planar"};
    const Plane& plane = *plq.plane;
    if (plane.contains(eye)) return {std::nullopt, "EyeOnPlane"};

    // ratio identities r_i * d_j == r_j * d_i where
    // r_i = x2_i(psi(t)) - x1_i(t), d_i = a4 * x1_i(t) - a_i
    std::array<RatFun, 3> r, d;
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = c2.coord(i).compose(cand.psi) - c1.coord(i);
        d[i] = c1.coord(i) * RatFun(Rat(eye[3])) - RatFun(Rat(eye[i]));
    }
    bool ratios_ok = true;
    for (std::size_t i = 0; i < 3 && ratios_ok; ++i)
        for (std::size_t j = i + 1; j < 3 && ratios_ok; ++j)
            if (r[i] * d[j] != r[j] * d[i]) ratios_ok = false;

    std::optional<RatFun> lambda;
    if (ratios_ok) {
        for (std::size_t i = 0; i < 3; ++i)
            if (!d[i].is_zero()) {
                lambda = r[i] / d[i];
                break;
            }
        if (!lambda) ratios_ok = false; // x1 constant; cannot happen for curves
    }

    // gcd image-equality test (route two); must agree with the ratio route
    bool gcd_ok = false;
    try {
        ProjMatrix P = build_projection_matrix(eye, plane);
        CurveParam image = apply_projection(P, c1);
        auto nums = difference_numerators(image, c2);
        BiPoly g;
        bool all_zero = true;
        for (const auto& ni : nums) {
            if (ni.is_zero()) continue;
            all_zero = false;
            g = g.is_zero() ? ni : bipoly_gcd(g, ni);
        }
        gcd_ok = all_zero || !g.is_constant();
        if (gcd_ok != ratios_ok) throw internal_error("certification routes disagree");
        if (!ratios_ok) return {std::nullopt, "projection identity fails"};

        ProjectionFinding f;
        f.eye = eye;
        f.kind = eye.is_at_infinity() ? ProjectionKind::Parallel : ProjectionKind::Perspective;
        f.degenerate = cand.psi.degree() >= 2;
        f.psi = cand.psi;
        f.certification = Certification::Exact;
        f.matrix = P;
        f.lambda = lambda;
        return {f, ""};
    } catch (const collapses_to_point_error&) {
        if (ratios_ok) throw internal_error("certification routes disagree");
        return {std::nullopt, "projection collapses C1"};
    }
}

inline void validate_detect_inputs(const CurveParam& c1, const CurveParam& c2) {
    auto q1 = plane_of_curve(c1);
    auto q2 = plane_of_curve(c2);
    if (q1.is_line || q2.is_line) throw line_input_error();
    if (!q2.plane) throw not_planar_error("C2 must be planar");
    if (q1.plane && *q1.plane == *q2.plane) throw coplanar_curves_error();
    if (tracing_index(c1) != 1)
        throw improper_parametrization_error("C1 is not properly parametrized");
    if (tracing_index(c2) != 1)
        throw improper_parametrization_error("C2 is not properly parametrized");
}

inline DetectResult detect_exact_full(const CurveParam& c1, const CurveParam& c2) {
    validate_detect_inputs(c1, c2);
    ConstraintSurface surface = compute_constraint_surface(c1, c2);

    DetectResult result;
    for (PsiCandidate cand : rational_psi_candidates(surface)) {
        unlucky_params(cand, c1, c2, surface);

        // first two admissible parameter values; step further when the
        // witness lines coincide
        std::vector<Rat> picked;
        std::optional<ProjPoint> eye;
        bool skew = false;
        for (long k = 0; k < 1000 && !eye && !skew; ++k) {
            Rat t0 = detail::abscissa_stream(k);
            if (!is_admissible_t(cand, surface, t0)) continue;
            if (cand.psi.is_pole(t0)) continue;
            picked.push_back(t0);
            if (picked.size() < 2) continue;
            try {
                auto hit = eye_from_lucky_pairs(cand, c1, c2, picked[picked.size() - 2],
                                                picked.back());
                if (hit)
                    eye = hit;
                else
                    skew = true;
            } catch (const identical_points_error&) {
                picked.pop_back(); // collinear witnesses; advance t2 only
            }
        }
        if (skew || !eye) {
            result.rejected.push_back({cand.psi, "witness lines are skew"});
            continue;
        }
        CertifyOutcome out = certify_exact(cand, *eye, c1, c2);
        if (out.finding)
            result.findings.push_back(std::move(*out.finding));
        else
            result.rejected.push_back({cand.psi, out.reject_reason});
    }
    return result;
}

inline std::vector<ProjectionFinding> detect_exact(const CurveParam& c1, const CurveParam& c2) {
    return detect_exact_full(c1, c2).findings;
}

} // namespace curveproj
