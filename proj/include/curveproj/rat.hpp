#pragma once

// Exact rational scalars backed by GMP. Values are always canonical:
// coprime numerator/denominator, denominator > 0, zero is 0/1.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "curveproj/errors.hpp"

namespace curveproj {

using Int = mpz_class;

class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}                      // NOLINT(google-explicit-constructor)
    Rat(int n) : q_(n) {}                       // NOLINT(google-explicit-constructor)
    Rat(const Int& n) : q_(n) {}                // NOLINT(google-explicit-constructor)
    Rat(const Int& num, const Int& den) : q_(num, den) {
        if (den == 0) throw zero_denominator_error();
        q_.canonicalize();
    }
    Rat(long num, long den) : Rat(Int(num), Int(den)) {}
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "a", "a/b" or a plain decimal like "1.25" into an exact value.
    static Rat from_string(const std::string& s);

    Int num() const { return q_.get_num(); }
    Int den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string to_string() const { return q_.get_str(); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw division_by_zero_error("division of Rat by zero");
        return Rat(mpq_class(q_ / o.q_));
    }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    bool operator==(const Rat& o) const { return q_ == o.q_; }
    bool operator!=(const Rat& o) const { return q_ != o.q_; }
    bool operator<(const Rat& o) const { return q_ < o.q_; }
    bool operator<=(const Rat& o) const { return q_ <= o.q_; }
    bool operator>(const Rat& o) const { return q_ > o.q_; }
    bool operator>=(const Rat& o) const { return q_ >= o.q_; }

    Rat inverse() const {
        if (is_zero()) throw division_by_zero_error("inverse of zero");
        return Rat(den(), num());
    }

    Rat abs() const { return sign() < 0 ? -*this : *this; }

    Rat pow(unsigned long e) const {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), e);
        mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), e);
        return Rat(r);
    }

    Int floor() const {
        Int r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    Int ceil() const {
        Int r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

inline Rat Rat::from_string(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw syntax_error(0, "bad rational literal '" + s + "'");
        if (q.get_den() == 0) throw zero_denominator_error();
        q.canonicalize();
        return Rat(q);
    }
    // decimal literal: digits '.' digits
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (fp.empty() && ip.empty()) throw syntax_error(0, "bad decimal literal '" + s + "'");
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg) ip = ip.substr(1);
    Int scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Int whole(ip.empty() ? std::string("0") : ip);
    Int frac(fp.empty() ? std::string("0") : fp);
    Rat r(whole * scale + frac, scale);
    return neg ? -r : r;
}

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

} // namespace curveproj
