#include <catch_amalgamated.hpp>

#include <random>

#include "testutil.hpp"

using namespace curveproj;

TEST_CASE("basic expressions") {
    RatFun f = parse_ratfun_expr("10*s+5", "s");
    CHECK(f == RatFun(Poly(std::vector<Rat>{Rat(5), Rat(10)})));

    CHECK(parse_ratfun_expr("t", "t") == RatFun::variable());

    RatFun g = parse_ratfun_expr("(2*t^5+11*t^4+14*t^3-3*t^2-12*t+4)/(t+2)^2", "t");
    CHECK(g.num().degree() == 5);
    CHECK(g.den().degree() == 2);
    CHECK(*g.eval(Rat(0)) == Rat(1));
    CHECK(*g.eval(Rat(1)) == Rat(16, 9));
}

TEST_CASE("rationals, decimals, precedence") {
    CHECK(parse_ratfun_expr("3/4", "t") == RatFun(Rat(3, 4)));
    CHECK(parse_ratfun_expr("0.125", "t") == RatFun(Rat(1, 8)));
    // '^' binds tighter than unary minus
    CHECK(parse_ratfun_expr("-t^2", "t") == -(RatFun::variable() * RatFun::variable()));
    CHECK(parse_ratfun_expr("2*t^2", "t") ==
          RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(2)})));
    CHECK(parse_ratfun_expr("1/t", "t") == RatFun(Poly(Rat(1)), Poly::variable()));
    CHECK(parse_ratfun_expr("t^0", "t") == RatFun(Rat(1)));
}

TEST_CASE("whitespace and redundant parentheses do not matter") {
    auto a = parse_ratfun_expr("(t+1)*(t-1)/(t^2+2)", "t");
    auto b = parse_ratfun_expr("  ( (t + 1) * ( t - 1 ) ) / ( ( t^2 + 2 ) )  ", "t");
    CHECK(a == b);
}

TEST_CASE("positioned errors") {
    CHECK_THROWS_AS(parse_ratfun_expr("t + ", "t"), syntax_error);
    CHECK_THROWS_AS(parse_ratfun_expr("2t", "t"), syntax_error);       // implicit multiplication
    CHECK_THROWS_AS(parse_ratfun_expr("t^-1", "t"), syntax_error);     // negative exponent
    CHECK_THROWS_AS(parse_ratfun_expr("t^(2)", "t"), syntax_error);    // exponent must be literal
    CHECK_THROWS_AS(parse_ratfun_expr("u+1", "t"), unknown_symbol_error);
    CHECK_THROWS_AS(parse_ratfun_expr("1/(t-t)", "t"), division_by_zero_poly_error);
    CHECK_THROWS_AS(parse_ratfun_expr("(t+1", "t"), syntax_error);

    try {
        parse_ratfun_expr("1 + u*2", "t");
        FAIL("expected unknown_symbol_error");
    } catch (const unknown_symbol_error& e) {
        CHECK(e.position() == 4);
        CHECK(e.symbol() == "u");
    }
}

TEST_CASE("parse_curve and error ordering") {
    nlohmann::json ok = {{"variable", "s"},
                         {"x", "(1-s^2)/(1+s^2)"},
                         {"y", "2*s/(1+s^2)"},
                         {"z", "1"},
                         {"label", "unit circle at z=1"}};
    CurveParam c = parse_curve(ok);
    auto p = c.affine_at(Rat(1));
    REQUIRE(p.has_value());
    CHECK((*p)[0] == Rat(0));
    CHECK((*p)[1] == Rat(1));
    CHECK((*p)[2] == Rat(1));

    nlohmann::json discussion = {{"variable", "t"}, {"x", "t"}, {"y", "t^2"}, {"z", "1/t"}};
    CHECK(parse_curve(discussion).is_pole(Rat(0)));

    nlohmann::json missing = {{"variable", "t"}, {"x", "t"}, {"y", "u"}};
    CHECK_THROWS_AS(parse_curve(missing), missing_field_error);
    missing["z"] = "1";
    CHECK_THROWS_AS(parse_curve(missing), unknown_symbol_error);
}

TEST_CASE("round trip: print then parse is the identity on 200 random functions") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> deg(0, 4);
    int done = 0;
    while (done < 200) {
        Poly n = testutil::random_poly(rng, deg(rng), 9);
        Poly d = testutil::random_poly(rng, deg(rng), 9);
        if (n.is_zero() || d.is_zero()) continue;
        RatFun f(n, d);
        RatFun g = parse_ratfun_expr(f.to_string("t"), "t");
        CHECK(g == f);
        // pretty-print of the reparse is a fixed point
        CHECK(g.to_string("t") == f.to_string("t"));
        ++done;
    }
}

TEST_CASE("pair files") {
    nlohmann::json pair = {
        {"C1", {{"variable", "t"}, {"x", "t"}, {"y", "t^2"}, {"z", "1/t"}, {"label", "space"}}},
        {"C2", {{"variable", "s"}, {"x", "s"}, {"y", "s^2"}, {"z", "0"}, {"label", "shadow"}}}};
    auto pr = parse_pair(pair);
    CHECK(pr.spec1.label == "space");
    CHECK(pr.c2.degree() == 2);
    nlohmann::json broken = {{"C1", pair["C1"]}};
    CHECK_THROWS_AS(parse_pair(broken), missing_field_error);
}
