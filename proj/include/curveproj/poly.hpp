#pragma once

// Dense univariate polynomials over Q, coefficients stored ascending.
// The zero polynomial is the empty coefficient list (degree -1).

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "curveproj/rat.hpp"

namespace curveproj {

class Poly {
public:
    Poly() = default;
    Poly(const Rat& c) {                        // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    Poly(int c) : Poly(Rat(c)) {}               // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly variable() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const Rat& operator[](std::size_t i) const { return coeffs_[i]; }
    Rat coeff(int i) const {
        if (i < 0 || i > degree()) return Rat(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat lc() const { return is_zero() ? Rat(0) : coeffs_.back(); }

    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        std::vector<Rat> r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = -coeffs_[i];
        return Poly(std::move(r));
    }

    Poly operator+(const Poly& o) const {
        std::vector<Rat> r(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rat> r(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                r[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(r));
    }

    Poly operator*(const Rat& s) const {
        if (s.is_zero()) return Poly();
        std::vector<Rat> r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i] * s;
        return Poly(std::move(r));
    }
    Poly operator/(const Rat& s) const { return *this * s.inverse(); }

    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    // Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw division_by_zero_error("polynomial division by zero");
        Poly rem = *this;
        if (rem.degree() < d.degree()) return {Poly(), rem};
        std::vector<Rat> q(static_cast<std::size_t>(rem.degree() - d.degree()) + 1, Rat(0));
        Rat dlc_inv = d.lc().inverse();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int k = rem.degree() - d.degree();
            Rat c = rem.lc() * dlc_inv;
            q[static_cast<std::size_t>(k)] = c;
            // rem -= c * x^k * d
            std::vector<Rat> rc = rem.coeffs_;
            for (int i = 0; i <= d.degree(); ++i)
                rc[static_cast<std::size_t>(i + k)] -= c * d.coeff(i);
            rc.pop_back(); // leading term cancels exactly
            rem = Poly(std::move(rc));
        }
        return {Poly(std::move(q)), rem};
    }

    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    // Exact division; throws if the remainder is nonzero.
    Poly divide_exact(const Poly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw internal_error("inexact polynomial division");
        return q;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rat> r(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
        return Poly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    double eval(double x) const {
        double acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].to_double();
        return acc;
    }

    // p(x + c)
    Poly shift(const Rat& c) const {
        Poly acc;
        Poly lin(std::vector<Rat>{c, Rat(1)});
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * lin + Poly(coeffs_[i]);
        return acc;
    }

    // p(q(x)) for polynomial q
    Poly compose(const Poly& q) const {
        Poly acc;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * q + Poly(coeffs_[i]);
        return acc;
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        return *this * lc().inverse();
    }

    Poly pow(unsigned e) const {
        Poly r(Rat(1)), b = *this;
        while (e) {
            if (e & 1u) r *= b;
            b = (e >>= 1) ? b * b : b;
        }
        return r;
    }

    std::vector<double> to_doubles() const {
        std::vector<double> r(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] = coeffs_[i].to_double();
        return r;
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rat> coeffs_;
};

inline Poly operator*(const Rat& s, const Poly& p) { return p * s; }

// ---------------------------------------------------------------------------
// Integer polynomial helpers (used by gcd / root machinery).
// ---------------------------------------------------------------------------

using IPoly = std::vector<Int>; // ascending, may carry trailing zeros transiently

inline void ipoly_trim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int ipoly_degree(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Int ipoly_content(const IPoly& p) {
    Int g = 0;
    for (const auto& c : p) g = gcd(g, c);
    return g;
}

inline void ipoly_make_primitive(IPoly& p) {
    ipoly_trim(p);
    if (p.empty()) return;
    Int g = ipoly_content(p);
    if (p.back() < 0) g = -g;
    if (g != 1)
        for (auto& c : p) c /= g;
}

// Clears denominators: returns the primitive integer polynomial with positive
// leading coefficient that is a rational multiple of p.
inline IPoly to_integer_primitive(const Poly& p) {
    IPoly r;
    if (p.is_zero()) return r;
    Int l = 1;
    for (const auto& c : p.coeffs()) l = lcm(l, c.den());
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.push_back(c.num() * (l / c.den()));
    ipoly_make_primitive(r);
    return r;
}

inline Poly from_integer(const IPoly& p) {
    std::vector<Rat> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = Rat(p[i]);
    return Poly(std::move(r));
}

inline Int ipoly_eval(const IPoly& p, const Int& x) {
    Int acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

inline Rat ipoly_eval(const IPoly& p, const Rat& x) {
    // Horner over Q; exact.
    Rat acc(0);
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Rat(p[i]);
    return acc;
}

// Pseudo-remainder: lc(b)^(da-db+1) * a mod b, computed with integer ops only.
inline IPoly ipoly_prem(IPoly a, const IPoly& b) {
    ipoly_trim(a);
    int da = ipoly_degree(a), db = ipoly_degree(b);
    if (db < 0) throw division_by_zero_error("pseudo-remainder by zero");
    if (da < db) return a;
    const Int& lb = b.back();
    for (int k = da; k >= db; --k) {
        if (static_cast<int>(a.size()) - 1 < k || a[static_cast<std::size_t>(k)] == 0) {
            // still multiply the rest to keep the pseudo-remainder exact
            for (auto& c : a) c *= lb;
            continue;
        }
        Int head = a[static_cast<std::size_t>(k)];
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(k - db + i)] -= head * b[static_cast<std::size_t>(i)];
        ipoly_trim(a);
    }
    ipoly_trim(a);
    return a;
}

// Primitive PRS gcd over Z; result primitive with positive leading coefficient.
inline IPoly ipoly_gcd(IPoly a, IPoly b) {
    ipoly_make_primitive(a);
    ipoly_make_primitive(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (ipoly_degree(a) < ipoly_degree(b)) std::swap(a, b);
    while (!b.empty()) {
        IPoly r = ipoly_prem(a, b);
        ipoly_make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    ipoly_make_primitive(a);
    return a;
}

// Monic gcd over Q; gcd(a,0) = monic(a), gcd(0,0) = 0.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IPoly g = ipoly_gcd(to_integer_primitive(a), to_integer_primitive(b));
    return from_integer(g).monic();
}

inline Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) throw zero_polynomial_error("squarefree part of zero polynomial");
    if (p.degree() <= 0) return Poly(Rat(1));
    return p.divide_exact(poly_gcd(p, p.derivative())).monic();
}

// Resultant of a and b over Q via the Euclidean PRS update rules.
inline Rat poly_resultant(Poly a, Poly b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Rat res(1);
    while (true) {
        int da = a.degree(), db = b.degree();
        if (db == 0) {
            res *= b.lc().pow(static_cast<unsigned long>(da));
            return res;
        }
        Poly r = a % b;
        if (r.is_zero()) return Rat(0);
        int dr = r.degree();
        // res(a,b) = (-1)^{da*db} lc(b)^{da-dr} res(b,r)
        if ((da & 1) && (db & 1)) res = -res;
        res *= b.lc().pow(static_cast<unsigned long>(da - dr));
        a = std::move(b);
        b = std::move(r);
    }
}

// Newton interpolation through (x_i, y_i) with pairwise distinct x_i.
inline Poly poly_interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    const std::size_t n = points.size();
    if (n == 0) return Poly();
    // divided differences
    std::vector<Rat> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            Rat dx = points[i].first - points[i - level].first;
            if (dx.is_zero()) throw duplicate_abscissa_error();
            dd[i] = (dd[i] - dd[i - 1]) / dx;
        }
    Poly acc(dd[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        Poly lin(std::vector<Rat>{-points[i].first, Rat(1)});
        acc = acc * lin + Poly(dd[i]);
    }
    return acc;
}

inline std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rat c = coeff(i);
        if (c.is_zero()) continue;
        bool neg = c.sign() < 0;
        Rat a = c.abs();
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = (a == Rat(1)) && i != 0;
        if (!unit) out += a.to_string();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

} // namespace curveproj
