#include <catch_amalgamated.hpp>

#include <random>

#include "testutil.hpp"

using namespace curveproj;
using namespace testutil;

namespace {

ProjMatrix quartic_paper_matrix() {
    auto R = [](long a, long b, long c, long d) {
        return ProjMatrix::Row{Rat(a), Rat(b), Rat(c), Rat(d)};
    };
    return ProjMatrix({R(-2, 1, 1, 0), R(1, -2, 1, 0), R(1, 1, -2, 0), R(1, 1, 1, -3)});
}

} // namespace

TEST_CASE("projection matrix: quartic example comes out exactly") {
    ProjPoint eye = ProjPoint::affine(Rat(1), Rat(1), Rat(1));
    Plane plane(Rat(1), Rat(1), Rat(1), Rat(0));
    ProjMatrix P = build_projection_matrix(eye, plane);
    CHECK(P == quartic_paper_matrix());
    CHECK(P.rank() == 3);
    CHECK(is_perspective(P));
    auto img = P.apply(std::array<Rat, 4>{Rat(1), Rat(1), Rat(1), Rat(1)});
    for (const auto& v : img) CHECK(v.is_zero());
}

TEST_CASE("projection matrix: orthographic z-drop") {
    ProjMatrix P = build_projection_matrix(ProjPoint(Rat(0), Rat(0), Rat(1), Rat(0)),
                                           Plane(Rat(0), Rat(0), Rat(1), Rat(0)));
    CHECK_FALSE(is_perspective(P));
    ProjMatrix C = P.canonical();
    // canonical form is diag(1,1,0,1): [x:y:z:1] -> [x:y:0:1]
    CHECK(C[0][0] == Rat(1));
    CHECK(C[1][1] == Rat(1));
    CHECK(C[3][3] == Rat(1));
    ProjPoint q = P.apply(ProjPoint::affine(Rat(3), Rat(-2), Rat(7)));
    CHECK(q == ProjPoint::affine(Rat(3), Rat(-2), Rat(0)));
}

TEST_CASE("projection matrix: deg11 example eye and plane") {
    ProjPoint eye(Rat(1), Rat(1), Rat(-1), Rat(1));
    Plane plane(Rat(1), Rat(1), Rat(1), Rat(0)); // plane of deg11_c2
    auto q = plane_of_curve(deg11_c2());
    REQUIRE(q.plane.has_value());
    CHECK(*q.plane == plane);
    ProjMatrix P = build_projection_matrix(eye, plane);
    CHECK(P.rank() == 3);
    CHECK(eye_from_matrix(P) == eye);
    // rows besides the third match the published matrix; the third row of the
    // published matrix has a sign slip (its printed +2 breaks P*eye = 0)
    CHECK(P[0] == ProjMatrix::Row{Rat(0), Rat(1), Rat(1), Rat(0)});
    CHECK(P[1] == ProjMatrix::Row{Rat(1), Rat(0), Rat(1), Rat(0)});
    CHECK(P[2] == ProjMatrix::Row{Rat(-1), Rat(-1), Rat(-2), Rat(0)});
    CHECK(P[3] == ProjMatrix::Row{Rat(1), Rat(1), Rat(1), Rat(-1)});
}

TEST_CASE("eye on plane is rejected") {
    CHECK_THROWS_AS(
        build_projection_matrix(ProjPoint::affine(Rat(1), Rat(0), Rat(0)),
                                Plane(Rat(0), Rat(0), Rat(1), Rat(0))),
        eye_on_plane_error);
    // parallel direction inside the plane is the same degeneracy
    CHECK_THROWS_AS(build_projection_matrix(ProjPoint(Rat(1), Rat(0), Rat(0), Rat(0)),
                                            Plane(Rat(0), Rat(0), Rat(1), Rat(0))),
                    eye_on_plane_error);
}

TEST_CASE("eye round trip over random projections") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> v(-6, 6);
    int done = 0;
    while (done < 100) {
        Rat a(v(rng)), b(v(rng)), c(v(rng)), d(v(rng));
        if (a.is_zero() && b.is_zero() && c.is_zero()) continue;
        Plane plane(a, b, c, d);
        Rat e1(v(rng)), e2(v(rng)), e3(v(rng)), e4(v(rng) % 2 == 0 ? 1 : 0);
        if (e1.is_zero() && e2.is_zero() && e3.is_zero() && e4.is_zero()) continue;
        ProjPoint eye(e1, e2, e3, e4);
        if (plane.contains(eye)) continue;
        ProjMatrix P = build_projection_matrix(eye, plane);
        CHECK(P.rank() == 3);
        CHECK(eye_from_matrix(P) == eye);
        auto z = P.apply(std::array<Rat, 4>{eye[0], eye[1], eye[2], eye[3]});
        for (const auto& x : z) CHECK(x.is_zero());
        ++done;
    }
}

TEST_CASE("projection idempotence up to scale") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> v(-5, 5);
    int done = 0;
    while (done < 50) {
        Rat a(v(rng)), b(v(rng)), c(v(rng)), d(v(rng));
        if (a.is_zero() && b.is_zero() && c.is_zero()) continue;
        Plane plane(a, b, c, d);
        ProjPoint eye(Rat(v(rng)), Rat(v(rng)), Rat(v(rng)), Rat(1));
        if (plane.contains(eye)) continue;
        ProjMatrix P = build_projection_matrix(eye, plane);
        for (int k = 0; k < 5; ++k) {
            Rat x(v(rng)), y(v(rng)), z(v(rng));
            std::array<Rat, 4> pt{x, y, z, Rat(1)};
            auto once = P.apply(pt);
            bool zero = once[0].is_zero() && once[1].is_zero() && once[2].is_zero() && once[3].is_zero();
            if (zero) continue; // hit the eye
            auto twice = P.apply(once);
            ProjPoint p1(once[0], once[1], once[2], once[3]);
            ProjPoint p2(twice[0], twice[1], twice[2], twice[3]);
            CHECK(p1 == p2);
        }
        ++done;
    }
}

TEST_CASE("line through and exact intersection") {
    Line3 l = line_through(ProjPoint::affine(Rat(0), Rat(0), Rat(0)),
                           ProjPoint::affine(Rat(1), Rat(1), Rat(1)));
    CHECK(l.base == std::array<Rat, 3>{Rat(0), Rat(0), Rat(0)});
    CHECK(l.direction == std::array<Rat, 3>{Rat(1), Rat(1), Rat(1)});

    Line3 vert = line_through(ProjPoint::affine(Rat(2), Rat(3), Rat(0)),
                              ProjPoint(Rat(0), Rat(0), Rat(1), Rat(0)));
    CHECK(vert.direction == std::array<Rat, 3>{Rat(0), Rat(0), Rat(1)});

    CHECK_THROWS_AS(line_through(ProjPoint::affine(Rat(1), Rat(1), Rat(1)),
                                 ProjPoint::affine(Rat(1), Rat(1), Rat(1))),
                    identical_points_error);

    // two distinct vertical lines meet at the vertical point at infinity
    Line3 v2({Rat(5), Rat(5), Rat(0)}, {Rat(0), Rat(0), Rat(-3)});
    auto inf = intersect_lines_exact(vert, v2);
    CHECK(inf.kind == LineIntersection::Kind::AtInfinity);
    CHECK(*inf.point == ProjPoint(Rat(0), Rat(0), Rat(1), Rat(0)));

    auto same = intersect_lines_exact(vert, Line3({Rat(2), Rat(3), Rat(9)}, {Rat(0), Rat(0), Rat(7)}));
    CHECK(same.kind == LineIntersection::Kind::Identical);

    auto skew = intersect_lines_exact(Line3({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}),
                                      Line3({Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)}));
    CHECK(skew.kind == LineIntersection::Kind::Skew);

    auto pt = intersect_lines_exact(Line3({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(1), Rat(1)}),
                                    Line3({Rat(2), Rat(0), Rat(0)}, {Rat(-1), Rat(1), Rat(1)}));
    CHECK(pt.kind == LineIntersection::Kind::Point);
    CHECK(*pt.point == ProjPoint::affine(Rat(1), Rat(1), Rat(1)));
}

TEST_CASE("deg11 witness lines meet at (1,1,-1)") {
    RatFun psi = rf("-(t-1)/(t+1)");
    CurveParam c1 = deg11_c1(), c2 = deg11_c2();
    auto line_at = [&](const Rat& t) {
        ProjPoint p = c1.point_at(t);
        ProjPoint q = c2.point_at(*psi.eval(t));
        return line_through(p, q);
    };
    auto hit = intersect_lines_exact(line_at(Rat(3)), line_at(Rat(4)));
    REQUIRE(hit.kind == LineIntersection::Kind::Point);
    CHECK(*hit.point == ProjPoint::affine(Rat(1), Rat(1), Rat(-1)));
}

TEST_CASE("least squares pseudo-intersection") {
    Line3F a{{0, 0, 0}, {1, 0, 0}};
    Line3F b{{2, -1, 0}, {0, 1, 0}};
    auto r = pseudo_intersect_least_squares(a, b);
    CHECK(r.gap == Catch::Approx(0.0).margin(1e-14));
    CHECK(r.point[0] == Catch::Approx(2.0));
    CHECK(r.point[1] == Catch::Approx(0.0).margin(1e-14));

    Line3F c{{0, 0, 1}, {0, 1, 0}};
    auto s = pseudo_intersect_least_squares(a, c);
    CHECK(s.gap == Catch::Approx(1.0));
    CHECK(s.point[2] == Catch::Approx(0.5));

    CHECK_THROWS_AS(pseudo_intersect_least_squares(a, Line3F{{0, 5, 0}, {2, 0, 0}}),
                    near_parallel_error);
}

TEST_CASE("exact and least-squares intersections agree on random crossing lines") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> v(-8, 8);
    int done = 0;
    while (done < 100) {
        // two lines through a shared rational point
        std::array<Rat, 3> p{Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        std::array<Rat, 3> d1{Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        std::array<Rat, 3> d2{Rat(v(rng)), Rat(v(rng)), Rat(v(rng))};
        if (is_zero3(d1) || is_zero3(d2) || is_zero3(cross(d1, d2))) continue;
        std::array<Rat, 3> b1{p[0] - d1[0], p[1] - d1[1], p[2] - d1[2]};
        std::array<Rat, 3> b2{p[0] + d2[0] * Rat(2), p[1] + d2[1] * Rat(2), p[2] + d2[2] * Rat(2)};
        auto exact = intersect_lines_exact(Line3(b1, d1), Line3(b2, d2));
        REQUIRE(exact.kind == LineIntersection::Kind::Point);
        auto to_f = [](const std::array<Rat, 3>& u) {
            return Vec3{u[0].to_double(), u[1].to_double(), u[2].to_double()};
        };
        auto approx = pseudo_intersect_least_squares({to_f(b1), to_f(d1)}, {to_f(b2), to_f(d2)});
        CHECK(approx.gap < 1e-9);
        auto pc = exact.point->affine_coords();
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(std::abs(approx.point[i] - pc[i].to_double()) < 1e-9);
        ++done;
    }
}

TEST_CASE("apply_projection") {
    ProjMatrix zdrop = build_projection_matrix(ProjPoint(Rat(0), Rat(0), Rat(1), Rat(0)),
                                               Plane(Rat(0), Rat(0), Rat(1), Rat(0)));
    CurveParam flat = apply_projection(zdrop, parabola_c1());
    CHECK(flat.x() == rf("t"));
    CHECK(flat.y() == rf("t^2"));
    CHECK(flat.z().is_zero());

    // quartic pair: P maps c1 exactly onto c2 with the identity reparametrization
    ProjMatrix P = quartic_paper_matrix();
    CurveParam img = apply_projection(P, quartic_c1());
    CurveParam c2 = quartic_c2();
    CHECK(img.x() == c2.x());
    CHECK(img.y() == c2.y());
    CHECK(img.z() == c2.z());

    // image plane is exactly the target plane
    auto q = plane_of_curve(img);
    REQUIRE(q.plane.has_value());
    CHECK(*q.plane == Plane(Rat(1), Rat(1), Rat(1), Rat(0)));

    // a line through the eye collapses
    ProjMatrix P2 = build_projection_matrix(ProjPoint::affine(Rat(0), Rat(0), Rat(5)),
                                            Plane(Rat(0), Rat(0), Rat(1), Rat(0)));
    CHECK_THROWS_AS(apply_projection(P2, curve("t", "t", "5+t")), collapses_to_point_error);
}
