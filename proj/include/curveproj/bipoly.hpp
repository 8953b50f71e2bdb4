#pragma once

// Sparse bivariate polynomials over Q in the variables (t, s).
//
// The gcd and resultant routines eliminate one variable by evaluation at
// integer t-values followed by Newton interpolation; interpolated gcd
// candidates are certified by exact bivariate division, so unlucky
// evaluation points can only cause retries, never wrong results.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "curveproj/poly.hpp"

namespace curveproj {

class BiPoly {
public:
    using Key = std::pair<int, int>; // (deg_t, deg_s)

    BiPoly() = default;
    explicit BiPoly(const Rat& c) {
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }

    static BiPoly from_poly_t(const Poly& p) {
        BiPoly r;
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(i).is_zero()) r.terms_[{i, 0}] = p.coeff(i);
        return r;
    }
    static BiPoly from_poly_s(const Poly& p) {
        BiPoly r;
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(i).is_zero()) r.terms_[{0, i}] = p.coeff(i);
        return r;
    }
    // Assembles sum_k coeffs[k](t) * s^k.
    static BiPoly from_s_coefficients(const std::vector<Poly>& cs) {
        BiPoly r;
        for (std::size_t k = 0; k < cs.size(); ++k)
            for (int i = 0; i <= cs[k].degree(); ++i)
                if (!cs[k].coeff(i).is_zero())
                    r.terms_[{i, static_cast<int>(k)}] = cs[k].coeff(i);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
    }
    std::size_t num_terms() const { return terms_.size(); }

    int deg_t() const {
        int d = -1;
        for (const auto& [k, v] : terms_) d = std::max(d, k.first);
        return d;
    }
    int deg_s() const {
        int d = -1;
        for (const auto& [k, v] : terms_) d = std::max(d, k.second);
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [k, v] : terms_) d = std::max(d, k.first + k.second);
        return d;
    }

    Rat coeff(int dt, int ds) const {
        auto it = terms_.find({dt, ds});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    const std::map<Key, Rat>& terms() const { return terms_; }

    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    BiPoly operator-() const {
        BiPoly r;
        for (const auto& [k, v] : terms_) r.terms_[k] = -v;
        return r;
    }

    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [k, v] : o.terms_) {
            auto it = r.terms_.find(k);
            if (it == r.terms_.end()) {
                r.terms_[k] = v;
            } else {
                it->second += v;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }

    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        for (const auto& [ka, va] : terms_)
            for (const auto& [kb, vb] : o.terms_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                auto it = r.terms_.find(k);
                if (it == r.terms_.end()) {
                    Rat p = va * vb;
                    if (!p.is_zero()) r.terms_[k] = p;
                } else {
                    it->second += va * vb;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        return r;
    }

    BiPoly operator*(const Rat& c) const {
        BiPoly r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
        return r;
    }

    BiPoly& operator+=(const BiPoly& o) { *this = *this + o; return *this; }
    BiPoly& operator-=(const BiPoly& o) { *this = *this - o; return *this; }
    BiPoly& operator*=(const BiPoly& o) { *this = *this * o; return *this; }

    BiPoly partial_t() const {
        BiPoly r;
        for (const auto& [k, v] : terms_)
            if (k.first > 0) r.terms_[{k.first - 1, k.second}] = v * Rat(k.first);
        return r;
    }
    BiPoly partial_s() const {
        BiPoly r;
        for (const auto& [k, v] : terms_)
            if (k.second > 0) r.terms_[{k.first, k.second - 1}] = v * Rat(k.second);
        return r;
    }

    BiPoly transpose() const {
        BiPoly r;
        for (const auto& [k, v] : terms_) r.terms_[{k.second, k.first}] = v;
        return r;
    }

    // Coefficient of s^k as a polynomial in t.
    Poly coeff_of_s(int k) const {
        std::vector<Rat> cs;
        for (const auto& [key, v] : terms_)
            if (key.second == k) {
                if (static_cast<int>(cs.size()) <= key.first) cs.resize(key.first + 1, Rat(0));
                cs[static_cast<std::size_t>(key.first)] = v;
            }
        return Poly(std::move(cs));
    }

    Poly lc_s() const { return coeff_of_s(deg_s()); }

    std::vector<Poly> s_coefficients() const {
        std::vector<Poly> r(static_cast<std::size_t>(std::max(deg_s(), -1) + 1));
        for (int k = 0; k <= deg_s(); ++k) r[static_cast<std::size_t>(k)] = coeff_of_s(k);
        return r;
    }

    // Substitution t = value; result is a polynomial in s.
    Poly eval_t(const Rat& t) const {
        std::vector<Rat> out;
        // Horner in t per s-degree
        auto cs = s_coefficients();
        out.resize(cs.size(), Rat(0));
        for (std::size_t k = 0; k < cs.size(); ++k) out[k] = cs[k].eval(t);
        return Poly(std::move(out));
    }
    Poly eval_s(const Rat& s) const { return transpose().eval_t(s); }

    Rat eval(const Rat& t, const Rat& s) const { return eval_t(t).eval(s); }
    double eval(double t, double s) const {
        auto cs = s_coefficients();
        double acc = 0;
        for (std::size_t k = cs.size(); k-- > 0;) acc = acc * s + cs[k].eval(t);
        return acc;
    }

    // f(t + c, s); used to recenter before power-series lifting.
    BiPoly shift_t(const Rat& c) const {
        auto cs = s_coefficients();
        for (auto& p : cs) p = p.shift(c);
        return from_s_coefficients(cs);
    }

    // Primitive integer coefficients, sign fixed so the graded-lex (t > s)
    // leading coefficient is positive.
    BiPoly normalized() const {
        if (is_zero()) return BiPoly();
        Int l = 1;
        for (const auto& [k, v] : terms_) l = lcm(l, v.den());
        Int g = 0;
        for (const auto& [k, v] : terms_) g = gcd(g, v.num() * (l / v.den()));
        Rat scale = Rat(l, g);
        if (leading_coeff_gl().sign() * scale.sign() < 0) scale = -scale;
        return *this * scale;
    }

    // Leading coefficient in graded-lex order with t > s.
    Rat leading_coeff_gl() const { return terms_.find(leading_key_gl())->second; }
    Key leading_key_gl() const {
        Key best{-1, -1};
        bool first = true;
        for (const auto& [k, v] : terms_) {
            if (first) { best = k; first = false; continue; }
            int da = k.first + k.second, db = best.first + best.second;
            if (da > db || (da == db && k.first > best.first)) best = k;
        }
        return best;
    }

    // Term-wise exact division test; returns the quotient iff d divides *this.
    std::optional<BiPoly> divided_by(const BiPoly& d) const {
        if (d.is_zero()) throw division_by_zero_error("bivariate division by zero");
        BiPoly rem = *this, q;
        Key dk = d.leading_key_gl();
        Rat dc = d.terms_.find(dk)->second;
        while (!rem.is_zero()) {
            Key rk = rem.leading_key_gl();
            if (rk.first < dk.first || rk.second < dk.second) return std::nullopt;
            Key qk{rk.first - dk.first, rk.second - dk.second};
            Rat qc = rem.terms_.find(rk)->second / dc;
            BiPoly term;
            term.terms_[qk] = qc;
            q += term;
            rem -= term * d;
        }
        return q;
    }

    BiPoly divide_exact(const BiPoly& d) const {
        auto q = divided_by(d);
        if (!q) throw internal_error("inexact bivariate division");
        return *q;
    }

    bool divides(const BiPoly& f) const { return f.divided_by(*this).has_value(); }

    std::string to_string(const std::string& tv = "t", const std::string& sv = "s") const;

private:
    std::map<Key, Rat> terms_;
};

inline BiPoly operator*(const Rat& c, const BiPoly& p) { return p * c; }

inline bool bipoly_equal_normalized(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return a.normalized() == b.normalized();
}

namespace detail {

// Content of f seen in Q[t][s]: the monic univariate gcd of the s-coefficients.
inline Poly bipoly_content_s(const BiPoly& f) {
    Poly c;
    for (int k = 0; k <= f.deg_s(); ++k) {
        c = poly_gcd(c, f.coeff_of_s(k));
        if (c.degree() == 0) break;
    }
    return c;
}

} // namespace detail

// Gcd in Q[t,s], normalized per BiPoly::normalized(). Evaluation/interpolation
// in t with an exact division certificate at the end.
inline BiPoly bipoly_gcd(const BiPoly& F, const BiPoly& G) {
    if (F.is_zero()) return G.is_zero() ? BiPoly() : G.normalized();
    if (G.is_zero()) return F.normalized();

    Poly contF = detail::bipoly_content_s(F);
    Poly contG = detail::bipoly_content_s(G);
    BiPoly ppF = F.divide_exact(BiPoly::from_poly_t(contF));
    BiPoly ppG = G.divide_exact(BiPoly::from_poly_t(contG));
    Poly c = poly_gcd(contF, contG);

    if (ppF.is_constant() || ppG.is_constant() || ppF.deg_s() == 0 || ppG.deg_s() == 0) {
        // primitive parts share no s-dependent factor beyond trivial content
        if (ppF.deg_s() == 0 && ppG.deg_s() == 0) {
            // both collapse to Q[t]
            Poly g = poly_gcd(ppF.coeff_of_s(0), ppG.coeff_of_s(0));
            return BiPoly::from_poly_t(c * g).normalized();
        }
        return BiPoly::from_poly_t(c).normalized();
    }

    Poly gamma = poly_gcd(ppF.lc_s(), ppG.lc_s());
    int bound = gamma.degree() + std::min(ppF.deg_t(), ppG.deg_t());

    for (int attempt = 0; attempt < 8; ++attempt) {
        int want = bound + 1 + attempt * (bound + 1);
        std::vector<std::pair<Rat, Poly>> pts;
        int ds_star = -1;
        long tau_seed = attempt * 1000;
        long k = 0;
        while (static_cast<int>(pts.size()) < want && k < 100000) {
            long v = tau_seed + ((k % 2 == 0) ? k / 2 : -(k / 2 + 1));
            ++k;
            Rat tau(v);
            if (ppF.lc_s().eval(tau).is_zero() || ppG.lc_s().eval(tau).is_zero()) continue;
            Poly h = poly_gcd(ppF.eval_t(tau), ppG.eval_t(tau));
            int d = h.degree();
            if (ds_star < 0 || d < ds_star) {
                ds_star = d;
                pts.clear();
            }
            if (d == ds_star) pts.emplace_back(tau, h * gamma.eval(tau));
            if (ds_star == 0) return BiPoly::from_poly_t(c).normalized();
        }
        if (ds_star <= 0) return BiPoly::from_poly_t(c).normalized();

        // interpolate each s-coefficient of the scaled gcd image
        std::vector<Poly> cs(static_cast<std::size_t>(ds_star) + 1);
        bool ok = true;
        for (int j = 0; j <= ds_star && ok; ++j) {
            std::vector<std::pair<Rat, Rat>> data;
            data.reserve(pts.size());
            for (const auto& [tau, h] : pts) data.emplace_back(tau, h.coeff(j));
            cs[static_cast<std::size_t>(j)] = poly_interpolate(data);
        }
        BiPoly H = BiPoly::from_s_coefficients(cs);
        if (H.is_zero()) continue;
        // the scaled image carries the extra t-content gamma/lc_s(gcd); strip it
        Poly hc = detail::bipoly_content_s(H);
        if (hc.degree() > 0) H = H.divide_exact(BiPoly::from_poly_t(hc));
        H = H.normalized();
        if (H.divides(ppF) && H.divides(ppG))
            return (BiPoly::from_poly_t(c) * H).normalized();
        // unlucky evaluation set; retry with more points
    }
    throw internal_error("bivariate gcd did not stabilize");
}

inline BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b, const BiPoly& c) {
    BiPoly g = bipoly_gcd(a, b);
    if (g.is_constant()) return g;
    return bipoly_gcd(g, c);
}

// Product of the distinct irreducible factors of f, normalized.
inline BiPoly bipoly_squarefree_part(const BiPoly& f) {
    if (f.is_zero()) throw zero_polynomial_error("squarefree part of zero bivariate polynomial");
    if (f.is_constant()) return BiPoly(Rat(1));
    BiPoly g = bipoly_gcd(bipoly_gcd(f, f.partial_s()), f.partial_t());
    return f.normalized().divide_exact(g).normalized();
}

// Res_s(F, G) as a polynomial in t, by evaluation/interpolation.
inline Poly bipoly_resultant_s(const BiPoly& F, const BiPoly& G) {
    if (F.is_zero() || G.is_zero()) return Poly();
    if (F.deg_s() == 0 || G.deg_s() == 0) {
        // Res_s(f(t), G) = f(t)^{deg_s G}
        const BiPoly& u = F.deg_s() == 0 ? F : G;
        const BiPoly& v = F.deg_s() == 0 ? G : F;
        Poly base = u.coeff_of_s(0);
        Poly r(Rat(1));
        for (int i = 0; i < v.deg_s(); ++i) r *= base;
        return r;
    }
    int bound = F.deg_s() * G.deg_t() + G.deg_s() * F.deg_t();
    std::vector<std::pair<Rat, Rat>> data;
    long k = 0;
    while (static_cast<int>(data.size()) < bound + 1 && k < 100000) {
        long v = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        ++k;
        Rat tau(v);
        if (F.lc_s().eval(tau).is_zero() || G.lc_s().eval(tau).is_zero()) continue;
        data.emplace_back(tau, poly_resultant(F.eval_t(tau), G.eval_t(tau)));
    }
    if (static_cast<int>(data.size()) < bound + 1)
        throw internal_error("resultant interpolation ran out of sample points");
    return poly_interpolate(data);
}

inline Poly bipoly_resultant_t(const BiPoly& F, const BiPoly& G) {
    return bipoly_resultant_s(F.transpose(), G.transpose());
}

inline std::string BiPoly::to_string(const std::string& tv, const std::string& sv) const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, v] = *it;
        bool neg = v.sign() < 0;
        Rat a = v.abs();
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = (a == Rat(1)) && (k.first > 0 || k.second > 0);
        if (!unit) out += a.to_string();
        bool star = !unit;
        auto put = [&](const std::string& var, int d) {
            if (d == 0) return;
            if (star) out += "*";
            out += var;
            if (d > 1) out += "^" + std::to_string(d);
            star = true;
        };
        put(tv, k.first);
        put(sv, k.second);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.to_string(); }

} // namespace curveproj
