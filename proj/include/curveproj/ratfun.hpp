#pragma once

// Rational functions in one variable, kept in canonical form:
// coprime numerator/denominator, denominator monic and nonzero.

#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "curveproj/poly.hpp"

namespace curveproj {

class RatFun {
public:
    RatFun() : num_(), den_(Rat(1)) {}
    RatFun(const Rat& c) : num_(c), den_(Rat(1)) {}   // NOLINT(google-explicit-constructor)
    RatFun(const Poly& p) : num_(p), den_(Rat(1)) {}  // NOLINT(google-explicit-constructor)
    RatFun(Poly num, Poly den) {
        if (den.is_zero()) throw zero_denominator_error("rational function with zero denominator");
        Poly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = num.divide_exact(g);
            den = den.divide_exact(g);
        }
        Rat scale = den.lc().inverse();
        num_ = num * scale;
        den_ = den * scale;
        if (num_.is_zero()) den_ = Poly(Rat(1));
    }

    static RatFun variable() { return RatFun(Poly::variable()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // max(deg num, deg den); the degree of a nonzero constant is 0
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    RatFun operator-() const {
        RatFun r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RatFun operator+(const RatFun& o) const {
        return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFun operator-(const RatFun& o) const { return *this + (-o); }
    RatFun operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
    RatFun operator/(const RatFun& o) const {
        if (o.is_zero()) throw division_by_zero_error("division by the zero rational function");
        return RatFun(num_ * o.den_, den_ * o.num_);
    }

    RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
    RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
    RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }
    RatFun& operator/=(const RatFun& o) { *this = *this / o; return *this; }

    RatFun derivative() const {
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // nullopt at poles
    std::optional<Rat> eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d.is_zero()) return std::nullopt;
        return num_.eval(x) / d;
    }

    double eval(double x) const { return num_.eval(x) / den_.eval(x); }

    bool is_pole(const Rat& x) const { return den_.eval(x).is_zero(); }

    // (this ∘ g)(x) = this(g(x))
    RatFun compose(const RatFun& g) const {
        int d = std::max(num_.degree(), den_.degree());
        // num(g) = sum num_i p^i q^(d-i), and likewise for den; the shared
        // factor q^d cancels in the quotient.
        Poly p = g.num(), q = g.den();
        std::vector<Poly> ppow(static_cast<std::size_t>(d) + 1), qpow(static_cast<std::size_t>(d) + 1);
        ppow[0] = Poly(Rat(1));
        qpow[0] = Poly(Rat(1));
        for (int i = 1; i <= d; ++i) {
            ppow[static_cast<std::size_t>(i)] = ppow[static_cast<std::size_t>(i - 1)] * p;
            qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i - 1)] * q;
        }
        Poly n, m;
        for (int i = 0; i <= d; ++i) {
            Poly w = ppow[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(d - i)];
            if (i <= num_.degree() && !num_.coeff(i).is_zero()) n += w * num_.coeff(i);
            if (i <= den_.degree() && !den_.coeff(i).is_zero()) m += w * den_.coeff(i);
        }
        return RatFun(n, m);
    }

    // Exact inverse of a Möbius transformation (at+b)/(ct+d), ad-bc != 0.
    std::optional<RatFun> mobius_inverse() const {
        if (degree() != 1) return std::nullopt;
        Rat a = num_.coeff(1), b = num_.coeff(0), c = den_.coeff(1), d = den_.coeff(0);
        if ((a * d - b * c).is_zero()) return std::nullopt;
        Poly x = Poly::variable();
        return RatFun(x * d - Poly(b), Poly(a) - x * c);
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_polynomial()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    Poly num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

// Total order used to emit findings deterministically: degree first, then
// numerator and denominator coefficients.
inline bool ratfun_less(const RatFun& a, const RatFun& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    auto cmp_poly = [](const Poly& x, const Poly& y) -> int {
        if (x.degree() != y.degree()) return x.degree() < y.degree() ? -1 : 1;
        for (int i = x.degree(); i >= 0; --i) {
            if (x.coeff(i) < y.coeff(i)) return -1;
            if (y.coeff(i) < x.coeff(i)) return 1;
        }
        return 0;
    };
    int c = cmp_poly(a.num(), b.num());
    if (c != 0) return c < 0;
    return cmp_poly(a.den(), b.den()) < 0;
}

} // namespace curveproj
