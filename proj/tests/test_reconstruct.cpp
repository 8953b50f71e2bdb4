#include <catch_amalgamated.hpp>

#include <random>

#include "curveproj/reconstruct.hpp"

using namespace curveproj;

namespace {

Poly P(std::initializer_list<long> ascending) {
    std::vector<Rat> c;
    for (long v : ascending) c.emplace_back(v);
    return Poly(std::move(c));
}

std::vector<std::pair<Rat, Rat>> sample(const RatFun& f, int n, long start = 0) {
    std::vector<std::pair<Rat, Rat>> out;
    long x = start;
    while (static_cast<int>(out.size()) < n) {
        Rat t(x++);
        auto v = f.eval(t);
        if (v) out.emplace_back(t, *v);
    }
    return out;
}

} // namespace

TEST_CASE("identity from six samples, bound 1") {
    RatFun id = RatFun::variable();
    auto psi = ratfun_reconstruct(sample(id, 6), 1);
    REQUIRE(psi.has_value());
    CHECK(*psi == id);
}

TEST_CASE("cone-example psi1 from eight samples, bound 3") {
    RatFun psi1(P({-4, 6, 12, 5}), P({-2, 3, 1}));
    auto got = ratfun_reconstruct(sample(psi1, 8), 3);
    REQUIRE(got.has_value());
    CHECK(*got == psi1);
    CHECK(got->degree() == 3);
}

TEST_CASE("degree-4 data under bound 2 -> no fit") {
    RatFun f(P({1, 0, 0, 0, 1}), P({3, 1})); // (t^4+1)/(t+3)
    auto got = ratfun_reconstruct(sample(f, 6), 2);
    CHECK_FALSE(got.has_value());
}

TEST_CASE("duplicate abscissa rejected") {
    std::vector<std::pair<Rat, Rat>> pts = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(1), Rat(1)},
                                            {Rat(2), Rat(2)}, {Rat(3), Rat(3)}, {Rat(4), Rat(4)}};
    CHECK_THROWS_AS(ratfun_reconstruct(pts, 1), duplicate_abscissa_error);
}

TEST_CASE("property: 200 random rational functions round-trip exactly") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coeff(-255, 255); // 9-bit signed range
    std::uniform_int_distribution<int> deg(0, 5);
    int done = 0;
    while (done < 200) {
        int dn = deg(rng), dd = deg(rng);
        if (dn == 0 && dd == 0) continue;
        std::vector<Rat> nc(static_cast<std::size_t>(dn) + 1), dc(static_cast<std::size_t>(dd) + 1);
        for (auto& x : nc) x = Rat(coeff(rng));
        for (auto& x : dc) x = Rat(coeff(rng));
        if (nc.back().is_zero()) nc.back() = Rat(1);
        if (dc.back().is_zero()) dc.back() = Rat(1);
        Poly n(std::move(nc)), d(std::move(dc));
        if (n.is_zero() || d.is_zero()) continue;
        RatFun f(n, d);
        if (f.degree() < 1) continue;
        auto got = ratfun_reconstruct(sample(f, 12), 5);
        REQUIRE(got.has_value());
        CHECK(*got == f);
        ++done;
    }
}

TEST_CASE("pade from series recovers a rational function") {
    // f = (1 + 2x)/(1 - x): series 1 + 3x + 3x^2 + 3x^3 + ...
    std::vector<Rat> series = {Rat(1), Rat(3), Rat(3), Rat(3), Rat(3), Rat(3)};
    auto f = pade_from_series(series, 1, 1);
    REQUIRE(f.has_value());
    CHECK(*f == RatFun(P({1, 2}), P({1, -1})));
    CHECK(f->den().lc() == Rat(1));

    // series of exp truncated is not degree-(1,1) rational
    std::vector<Rat> e = {Rat(1), Rat(1), Rat(1, 2), Rat(1, 6), Rat(1, 24), Rat(1, 120)};
    auto g = pade_from_series(e, 1, 1);
    CHECK_FALSE(g.has_value());
}
