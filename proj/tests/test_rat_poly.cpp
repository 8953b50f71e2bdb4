#include <catch_amalgamated.hpp>

#include <random>

#include "curveproj/poly.hpp"

using namespace curveproj;

namespace {

Poly P(std::initializer_list<long> ascending) {
    std::vector<Rat> c;
    for (long v : ascending) c.emplace_back(v);
    return Poly(std::move(c));
}

} // namespace

TEST_CASE("Rat canonical form") {
    Rat a(4, -6);
    CHECK(a.num() == -2);
    CHECK(a.den() == 3);
    CHECK(Rat(0, 5) == Rat(0));
    CHECK(Rat(0).den() == 1);
    CHECK_THROWS_AS(Rat(1, 0), zero_denominator_error);
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(-7, 2).ceil() == -3);
    CHECK(Rat::from_string("-3/9") == Rat(-1, 3));
    CHECK(Rat::from_string("0.001") == Rat(1, 1000));
    CHECK(Rat::from_string("-2.5") == Rat(-5, 2));
}

TEST_CASE("Poly arithmetic and division") {
    Poly t = Poly::variable();
    Poly f = t * t - Poly(Rat(1));     // t^2 - 1
    Poly g = t - Poly(Rat(1));         // t - 1
    auto [q, r] = f.divmod(g);
    CHECK(r.is_zero());
    CHECK(q == t + Poly(Rat(1)));

    Poly h = P({4, 0, 1}); // t^2 + 4
    auto [q2, r2] = h.divmod(P({1, 2}));
    CHECK((q2 * P({1, 2}) + r2) == h);

    CHECK(f.shift(Rat(1)) == P({0, 2, 1})); // (t+1)^2 - 1 = t^2 + 2t
    CHECK(f.eval(Rat(3)) == Rat(8));
}

TEST_CASE("poly_gcd matches constructed common factors") {
    Poly t = Poly::variable();
    CHECK(poly_gcd(t * t - Poly(Rat(1)), t - Poly(Rat(1))) == t - Poly(Rat(1)));
    CHECK(poly_gcd(t * t + Poly(Rat(1)), t * t + Poly(Rat(2))) == Poly(Rat(1)));
    CHECK(poly_gcd(Poly(), Poly()).is_zero());
    CHECK(poly_gcd(P({0, 2, 4}), Poly()) == P({0, 1, 2}) * Rat(1, 2)); // monic of input
}

TEST_CASE("poly_gcd against brute-force division oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int it = 0; it < 60; ++it) {
        auto rnd = [&](int deg) {
            std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
            for (auto& x : c) x = Rat(coeff(rng));
            c.back() = Rat(coeff(rng) / 2 * 2 + 1); // nonzero
            return Poly(std::move(c));
        };
        Poly g = rnd(2), a = rnd(3) * g, b = rnd(2) * g;
        Poly d = poly_gcd(a, b);
        // oracle: the gcd must divide both inputs and be divisible by g
        CHECK(a.divmod(d).second.is_zero());
        CHECK(b.divmod(d).second.is_zero());
        CHECK(d.divmod(poly_gcd(d, g)).second.is_zero());
        CHECK(d.degree() >= g.degree() - poly_gcd(g, g.derivative()).degree());
        CHECK(d.lc() == Rat(1));
    }
}

TEST_CASE("squarefree part divides and is squarefree") {
    Poly t = Poly::variable();
    Poly f = (t - Poly(Rat(2))).pow(3) * (t + Poly(Rat(1)));
    Poly s = squarefree_part(f);
    CHECK(s == ((t - Poly(Rat(2))) * (t + Poly(Rat(1)))).monic());
    CHECK(poly_gcd(s, s.derivative()).degree() == 0);
    CHECK_THROWS_AS(squarefree_part(Poly()), zero_polynomial_error);
}

TEST_CASE("resultant basics") {
    Poly t = Poly::variable();
    // res(t-a, t-b) = b - a up to sign convention: res = product of (a_i - b_j)
    Poly f = t - Poly(Rat(2)), g = t - Poly(Rat(5));
    CHECK(poly_resultant(f, g).abs() == Rat(3));
    // common root => 0
    CHECK(poly_resultant(t * t - Poly(Rat(1)), t - Poly(Rat(1))) == Rat(0));
    // res(f,g) with f = t^2+1, g = t^2+2: roots ±i, ±i√2: product of differences = 1? check nonzero
    CHECK(poly_resultant(t * t + Poly(Rat(1)), t * t + Poly(Rat(2))) != Rat(0));
}

TEST_CASE("interpolation recovers polynomials") {
    Poly f = P({3, -2, 0, 5});
    std::vector<std::pair<Rat, Rat>> pts;
    for (long x = -2; x <= 2; ++x) pts.emplace_back(Rat(x), f.eval(Rat(x)));
    CHECK(poly_interpolate(pts) == f);
    pts[1].first = pts[0].first;
    CHECK_THROWS_AS(poly_interpolate(pts), duplicate_abscissa_error);
}
