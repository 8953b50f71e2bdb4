#pragma once

// Rational space-curve parametrizations and per-curve geometric predicates:
// containment plane, point at infinity, tracing index (properness), and a
// conservative description of self-intersection parameters.

#include <array>
#include <optional>
#include <vector>

#include "curveproj/bipoly.hpp"
#include "curveproj/geometry.hpp"
#include "curveproj/ratfun.hpp"

namespace curveproj {

class CurveParam {
public:
    CurveParam(RatFun x, RatFun y, RatFun z)
        : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
        if (x_.is_constant() && y_.is_constant() && z_.is_constant())
            throw degenerate_curve_error("parametrization is a single point");
        build_projective();
    }

    const RatFun& x() const { return x_; }
    const RatFun& y() const { return y_; }
    const RatFun& z() const { return z_; }
    const RatFun& coord(std::size_t i) const { return i == 0 ? x_ : i == 1 ? y_ : z_; }

    // coprime projective tuple [X:Y:Z:W], W monic, with x = X/W etc.
    const std::array<Poly, 4>& projective() const { return proj_; }

    int degree() const {
        int d = 0;
        for (const auto& p : proj_) d = std::max(d, p.degree());
        return d;
    }

    // exact projective evaluation; always defined since the tuple is coprime
    ProjPoint point_at(const Rat& t) const {
        return ProjPoint(proj_[0].eval(t), proj_[1].eval(t), proj_[2].eval(t), proj_[3].eval(t));
    }

    std::optional<std::array<Rat, 3>> affine_at(const Rat& t) const {
        Rat w = proj_[3].eval(t);
        if (w.is_zero()) return std::nullopt;
        Rat inv = w.inverse();
        return std::array<Rat, 3>{proj_[0].eval(t) * inv, proj_[1].eval(t) * inv,
                                  proj_[2].eval(t) * inv};
    }

    bool is_pole(const Rat& t) const { return proj_[3].eval(t).is_zero(); }

    CurveParam compose(const RatFun& m) const {
        if (m.is_constant()) throw degenerate_curve_error("reparametrization must be nonconstant");
        return CurveParam(x_.compose(m), y_.compose(m), z_.compose(m));
    }

    std::array<RatFun, 3> derivative() const {
        return {x_.derivative(), y_.derivative(), z_.derivative()};
    }

private:
    void build_projective() {
        auto lcm_poly = [](const Poly& a, const Poly& b) {
            return (a * b).divide_exact(poly_gcd(a, b)).monic();
        };
        Poly w = lcm_poly(lcm_poly(x_.den(), y_.den()), z_.den());
        Poly X = x_.num() * w.divide_exact(x_.den());
        Poly Y = y_.num() * w.divide_exact(y_.den());
        Poly Z = z_.num() * w.divide_exact(z_.den());
        Poly g = poly_gcd(poly_gcd(poly_gcd(X, Y), Z), w);
        if (g.degree() > 0) {
            X = X.divide_exact(g);
            Y = Y.divide_exact(g);
            Z = Z.divide_exact(g);
            w = w.divide_exact(g);
        }
        Rat inv = w.lc().inverse();
        proj_ = {X * inv, Y * inv, Z * inv, w * inv};
    }

    RatFun x_, y_, z_;
    std::array<Poly, 4> proj_;
};

struct PlaneQuery {
    std::optional<Plane> plane; // nullopt when the curve is not planar
    bool is_line = false;
};

// The unique plane containing the curve, if any; also flags straight lines
// (which lie in a pencil of planes).
inline PlaneQuery plane_of_curve(const CurveParam& c) {
    const auto& tup = c.projective();
    int d = c.degree();
    RatMatrix rows(static_cast<std::size_t>(d) + 1, std::vector<Rat>(4));
    for (int k = 0; k <= d; ++k)
        for (std::size_t j = 0; j < 4; ++j) rows[static_cast<std::size_t>(k)][j] = tup[j].coeff(k);
    auto basis = rat_kernel(std::move(rows));
    if (basis.empty()) return {std::nullopt, false};
    if (basis.size() >= 3) throw degenerate_curve_error("parametrization is a single point");
    for (const auto& v : basis) {
        if (!v[0].is_zero() || !v[1].is_zero() || !v[2].is_zero()) {
            return {Plane(v[0], v[1], v[2], v[3]), basis.size() >= 2};
        }
    }
    throw internal_error("kernel contained only the w-axis; zero denominator tuple");
}

inline ProjPoint point_at_infinity(const CurveParam& c) {
    const auto& tup = c.projective();
    int d = c.degree();
    return ProjPoint(tup[0].coeff(d), tup[1].coeff(d), tup[2].coeff(d), tup[3].coeff(d));
}

// Numerators of the component differences x_i(t) - y_i(s) for two curves
// given by coprime projective tuples; zero entries mean equal constants.
inline std::array<BiPoly, 3> difference_numerators(const CurveParam& a, const CurveParam& b) {
    const auto& ta = a.projective();
    const auto& tb = b.projective();
    std::array<BiPoly, 3> out;
    BiPoly wa = BiPoly::from_poly_t(ta[3]);
    BiPoly wb = BiPoly::from_poly_s(tb[3]);
    for (std::size_t i = 0; i < 3; ++i)
        out[i] = BiPoly::from_poly_t(ta[i]) * wb - BiPoly::from_poly_s(tb[i]) * wa;
    return out;
}

// Generic number of parameters per curve point: deg_s of the gcd of the
// self-difference numerators. 1 means the parametrization is proper.
inline int tracing_index(const CurveParam& c) {
    auto n = difference_numerators(c, c);
    BiPoly g;
    for (const auto& ni : n)
        if (!ni.is_zero()) g = g.is_zero() ? ni : bipoly_gcd(g, ni);
    if (g.is_zero()) throw degenerate_curve_error("all components constant");
    return g.deg_s();
}

// Squarefree polynomial whose real roots cover every parameter s0 such that
// x(s0) coincides with x(s1) for some s1 != s0. May over-approximate.
inline Poly self_intersection_params(const CurveParam& c) {
    if (tracing_index(c) != 1) throw improper_parametrization_error();
    auto n = difference_numerators(c, c);
    BiPoly ts = BiPoly::from_poly_t(Poly::variable()) - BiPoly::from_poly_s(Poly::variable());
    std::vector<BiPoly> h;
    for (const auto& ni : n)
        if (!ni.is_zero()) h.push_back(ni.divide_exact(ts));
    if (h.size() < 2) throw line_input_error("curve has at most one nonconstant coordinate");
    // pairwise resultants plus a few fixed linear combinations; the latter
    // discard parameters where different coordinate pairs merely share
    // different complex partners
    std::vector<std::pair<BiPoly, BiPoly>> pairs;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j) pairs.emplace_back(h[i], h[j]);
    if (h.size() == 3) {
        pairs.emplace_back(h[0], h[1] + h[2]);
        pairs.emplace_back(h[0], h[1] + h[2] * Rat(2));
        pairs.emplace_back(h[1], h[0] + h[2]);
    }
    Poly g;
    bool any = false;
    for (const auto& [u, v] : pairs) {
        if (g.degree() == 0 && any) break;
        Poly r = bipoly_resultant_t(u, v);
        if (r.is_zero()) continue;
        g = any ? poly_gcd(g, r) : r.monic();
        any = true;
    }
    if (!any)
        // all pairwise resultants vanish: shared bivariate factor; treat every
        // parameter as potentially bad is not workable, so refuse
        throw improper_parametrization_error("pairwise resultants all vanish");
    if (g.degree() == 0) return Poly(Rat(1));
    return squarefree_part(g);
}

// P applied to the curve, dehomogenized back to an affine parametrization.
inline CurveParam apply_projection(const ProjMatrix& P, const CurveParam& c) {
    const auto& tup = c.projective();
    std::array<Poly, 4> img;
    for (std::size_t i = 0; i < 4; ++i) {
        Poly acc;
        for (std::size_t j = 0; j < 4; ++j) acc += tup[j] * P[i][j];
        img[i] = acc;
    }
    // image degenerates to a point iff the coefficient matrix has rank <= 1
    int d = 0;
    for (const auto& p : img) d = std::max(d, p.degree());
    RatMatrix rows(4, std::vector<Rat>(static_cast<std::size_t>(d) + 1));
    for (std::size_t i = 0; i < 4; ++i)
        for (int k = 0; k <= d; ++k) rows[i][static_cast<std::size_t>(k)] = img[i].coeff(k);
    if (rat_rank(std::move(rows)) <= 1) throw collapses_to_point_error();
    if (img[3].is_zero()) throw collapses_to_point_error("image lies in the plane at infinity");
    return CurveParam(RatFun(img[0], img[3]), RatFun(img[1], img[3]), RatFun(img[2], img[3]));
}

} // namespace curveproj
