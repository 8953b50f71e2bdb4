#pragma once

// Projective 3-space primitives over Q: points, planes, lines, and the 4x4
// projection matrix mapping space points onto an image plane from an eye
// point (affine eye: perspective; eye at infinity: parallel). Also the
// floating-point least-squares line pseudo-intersection used by the
// approximate pipeline.

#include <array>
#include <cmath>
#include <optional>
#include <ostream>

#include "curveproj/linalg.hpp"
#include "curveproj/poly.hpp"

namespace curveproj {

class ProjPoint {
public:
    ProjPoint() : c_{Rat(0), Rat(0), Rat(0), Rat(1)} {}
    ProjPoint(Rat x, Rat y, Rat z, Rat w) : c_{std::move(x), std::move(y), std::move(z), std::move(w)} {
        bool all_zero = true;
        for (const auto& v : c_) all_zero = all_zero && v.is_zero();
        if (all_zero) throw error("ZeroPoint", "projective point needs a nonzero coordinate");
        canonicalize();
    }
    static ProjPoint affine(const Rat& x, const Rat& y, const Rat& z) {
        return ProjPoint(x, y, z, Rat(1));
    }
    static ProjPoint at_infinity(const Rat& dx, const Rat& dy, const Rat& dz) {
        return ProjPoint(dx, dy, dz, Rat(0));
    }

    const Rat& operator[](std::size_t i) const { return c_[i]; }
    bool is_at_infinity() const { return c_[3].is_zero(); }
    bool is_affine() const { return !is_at_infinity(); }

    std::array<Rat, 3> affine_coords() const {
        if (is_at_infinity()) throw error("PointAtInfinity", "no affine coordinates");
        return {c_[0], c_[1], c_[2]}; // canonical form already has w == 1
    }

    std::array<double, 4> to_doubles() const {
        return {c_[0].to_double(), c_[1].to_double(), c_[2].to_double(), c_[3].to_double()};
    }

    bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    // deterministic total order on canonical coordinates
    bool operator<(const ProjPoint& o) const {
        for (std::size_t i = 0; i < 4; ++i) {
            if (c_[i] < o.c_[i]) return true;
            if (o.c_[i] < c_[i]) return false;
        }
        return false;
    }

private:
    void canonicalize() {
        // divide by the last nonzero coordinate
        for (std::size_t i = 4; i-- > 0;) {
            if (!c_[i].is_zero()) {
                Rat inv = c_[i].inverse();
                for (auto& v : c_) v *= inv;
                return;
            }
        }
    }

    std::array<Rat, 4> c_;
};

inline std::ostream& operator<<(std::ostream& os, const ProjPoint& p) {
    return os << "[" << p[0] << ":" << p[1] << ":" << p[2] << ":" << p[3] << "]";
}

class Plane {
public:
    // Ax + By + Cz + D = 0, normalized so the first nonzero of (A,B,C,D) is 1.
    Plane(Rat a, Rat b, Rat c, Rat d) : v_{std::move(a), std::move(b), std::move(c), std::move(d)} {
        if (v_[0].is_zero() && v_[1].is_zero() && v_[2].is_zero())
            throw error("BadPlane", "plane normal must be nonzero");
        for (const auto& x : v_) {
            if (!x.is_zero()) {
                Rat inv = x.inverse();
                for (auto& y : v_) y *= inv;
                break;
            }
        }
    }

    const Rat& a() const { return v_[0]; }
    const Rat& b() const { return v_[1]; }
    const Rat& c() const { return v_[2]; }
    const Rat& d() const { return v_[3]; }
    const Rat& operator[](std::size_t i) const { return v_[i]; }

    // homogeneous incidence form
    Rat eval(const ProjPoint& p) const {
        return v_[0] * p[0] + v_[1] * p[1] + v_[2] * p[2] + v_[3] * p[3];
    }
    bool contains(const ProjPoint& p) const { return eval(p).is_zero(); }

    bool operator==(const Plane& o) const { return v_ == o.v_; }
    bool operator!=(const Plane& o) const { return !(*this == o); }

private:
    std::array<Rat, 4> v_;
};

inline std::ostream& operator<<(std::ostream& os, const Plane& p) {
    return os << p.a() << "*x + " << p.b() << "*y + " << p.c() << "*z + " << p.d() << " = 0";
}

struct Line3 {
    std::array<Rat, 3> base;      // an affine point on the line
    std::array<Rat, 3> direction; // nonzero

    Line3(std::array<Rat, 3> b, std::array<Rat, 3> d) : base(std::move(b)), direction(std::move(d)) {
        if (direction[0].is_zero() && direction[1].is_zero() && direction[2].is_zero())
            throw error("ZeroDirection", "line direction must be nonzero");
    }
};

// Line through two distinct projective points; at least one must be affine.
inline Line3 line_through(const ProjPoint& p, const ProjPoint& q) {
    if (p == q) throw identical_points_error();
    if (p.is_at_infinity() && q.is_at_infinity())
        throw error("NoAffinePoint", "line_through needs an affine point");
    const ProjPoint& aff = p.is_affine() ? p : q;
    const ProjPoint& other = p.is_affine() ? q : p;
    auto b = aff.affine_coords();
    std::array<Rat, 3> dir;
    if (other.is_at_infinity()) {
        dir = {other[0], other[1], other[2]};
    } else {
        auto oc = other.affine_coords();
        dir = {oc[0] - b[0], oc[1] - b[1], oc[2] - b[2]};
    }
    return Line3(std::move(b), std::move(dir));
}

inline std::array<Rat, 3> cross(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline bool is_zero3(const std::array<Rat, 3>& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

struct LineIntersection {
    enum class Kind { Point, AtInfinity, Skew, Identical } kind;
    std::optional<ProjPoint> point; // set for Point and AtInfinity
};

inline LineIntersection intersect_lines_exact(const Line3& l1, const Line3& l2) {
    std::array<Rat, 3> w = {l2.base[0] - l1.base[0], l2.base[1] - l1.base[1],
                            l2.base[2] - l1.base[2]};
    auto d = cross(l1.direction, l2.direction);
    if (is_zero3(d)) {
        if (is_zero3(cross(w, l1.direction)))
            return {LineIntersection::Kind::Identical, std::nullopt};
        return {LineIntersection::Kind::AtInfinity,
                ProjPoint(l1.direction[0], l1.direction[1], l1.direction[2], Rat(0))};
    }
    // solve mu*d1 - nu*d2 = w on two independent rows, verify the third
    int r0 = -1, r1 = -1;
    for (int i = 0; i < 3 && r1 < 0; ++i)
        for (int j = i + 1; j < 3 && r1 < 0; ++j) {
            Rat det = l1.direction[static_cast<std::size_t>(i)] * (-l2.direction[static_cast<std::size_t>(j)]) -
                      l1.direction[static_cast<std::size_t>(j)] * (-l2.direction[static_cast<std::size_t>(i)]);
            if (!det.is_zero()) {
                r0 = i;
                r1 = j;
            }
        }
    if (r0 < 0) return {LineIntersection::Kind::Skew, std::nullopt}; // cannot happen: d != 0
    auto i = static_cast<std::size_t>(r0), j = static_cast<std::size_t>(r1);
    Rat a11 = l1.direction[i], a12 = -l2.direction[i];
    Rat a21 = l1.direction[j], a22 = -l2.direction[j];
    Rat det = a11 * a22 - a12 * a21;
    Rat mu = (w[i] * a22 - a12 * w[j]) / det;
    Rat nu = (a11 * w[j] - w[i] * a21) / det;
    for (std::size_t k = 0; k < 3; ++k) {
        if (k == i || k == j) continue;
        if (l1.direction[k] * mu - l2.direction[k] * nu != w[k])
            return {LineIntersection::Kind::Skew, std::nullopt};
    }
    return {LineIntersection::Kind::Point,
            ProjPoint::affine(l1.base[0] + mu * l1.direction[0], l1.base[1] + mu * l1.direction[1],
                              l1.base[2] + mu * l1.direction[2])};
}

class ProjMatrix {
public:
    using Row = std::array<Rat, 4>;
    ProjMatrix() = default;
    explicit ProjMatrix(std::array<Row, 4> rows) : m_(std::move(rows)) {}

    const Row& operator[](std::size_t i) const { return m_[i]; }
    Row& operator[](std::size_t i) { return m_[i]; }

    std::array<Rat, 4> apply(const std::array<Rat, 4>& v) const {
        std::array<Rat, 4> r{Rat(0), Rat(0), Rat(0), Rat(0)};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) r[i] += m_[i][j] * v[j];
        return r;
    }

    ProjPoint apply(const ProjPoint& p) const {
        auto r = apply(std::array<Rat, 4>{p[0], p[1], p[2], p[3]});
        return ProjPoint(r[0], r[1], r[2], r[3]);
    }

    int rank() const {
        RatMatrix rows(4, std::vector<Rat>(4));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) rows[i][j] = m_[i][j];
        return rat_rank(std::move(rows));
    }

    // rank of the first-three-columns submatrix; < 3 for parallel projections
    int rank_m() const {
        RatMatrix rows(4, std::vector<Rat>(3));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) rows[i][j] = m_[i][j];
        return rat_rank(std::move(rows));
    }

    // scale so the first nonzero entry (row-major) equals 1
    ProjMatrix canonical() const {
        for (const auto& row : m_)
            for (const auto& v : row)
                if (!v.is_zero()) {
                    ProjMatrix r = *this;
                    Rat inv = v.inverse();
                    for (auto& rr : r.m_)
                        for (auto& x : rr) x *= inv;
                    return r;
                }
        return *this;
    }

    bool operator==(const ProjMatrix& o) const { return m_ == o.m_; }

    std::array<std::array<double, 4>, 4> to_doubles() const {
        std::array<std::array<double, 4>, 4> r{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) r[i][j] = m_[i][j].to_double();
        return r;
    }

private:
    std::array<Row, 4> m_{};
};

// The projection matrix onto `plane` from `eye`; entries follow the closed
// form obtained by eliminating the line parameter of eye->point against the
// plane incidence equation.
inline ProjMatrix build_projection_matrix(const ProjPoint& eye, const Plane& plane) {
    if (plane.contains(eye)) throw eye_on_plane_error();
    const Rat &a1 = eye[0], &a2 = eye[1], &a3 = eye[2], &a4 = eye[3];
    const Rat &A = plane.a(), &B = plane.b(), &C = plane.c(), &D = plane.d();
    std::array<ProjMatrix::Row, 4> rows = {{
        {-(a2 * B) - a3 * C - a4 * D, a1 * B, a1 * C, a1 * D},
        {a2 * A, -(a1 * A) - a3 * C - a4 * D, a2 * C, a2 * D},
        {a3 * A, a3 * B, -(a1 * A) - a2 * B - a4 * D, a3 * D},
        {a4 * A, a4 * B, a4 * C, -(a1 * A) - a2 * B - a3 * C},
    }};
    return ProjMatrix(rows);
}

inline bool is_perspective(const ProjMatrix& p) { return p.rank_m() == 3; }

// Kernel generator of a rank-3 projection matrix = the eye point.
inline ProjPoint eye_from_matrix(const ProjMatrix& p) {
    if (p.rank() != 3) throw bad_rank_error("projection matrix must have rank 3");
    RatMatrix rows(4, std::vector<Rat>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rows[i][j] = p[i][j];
    auto basis = rat_kernel(std::move(rows));
    if (basis.size() != 1) throw bad_rank_error("kernel dimension must be 1");
    return ProjPoint(basis[0][0], basis[0][1], basis[0][2], basis[0][3]);
}

// ---------------------------------------------------------------------------
// Floating-point pieces used by the approximate pipeline.
// ---------------------------------------------------------------------------

using Vec3 = std::array<double, 3>;

struct Line3F {
    Vec3 base;
    Vec3 direction;
};

inline double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
inline Vec3 cross3(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}
inline Vec3 sub(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
inline Vec3 add(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
inline Vec3 scale(const Vec3& u, double s) { return {u[0] * s, u[1] * s, u[2] * s}; }
inline double norm(const Vec3& u) { return std::sqrt(dot(u, u)); }

struct PseudoIntersection {
    Vec3 point; // midpoint of the common perpendicular segment
    double gap; // segment length
};

// Least-squares meeting point of two (possibly skew) lines: the midpoint of
// the common perpendicular, computed in closed form.
inline PseudoIntersection pseudo_intersect_least_squares(const Line3F& l1, const Line3F& l2,
                                                         double parallel_tol = 1e-12) {
    Vec3 w = sub(l1.base, l2.base);
    double a = dot(l1.direction, l1.direction);
    double b = dot(l1.direction, l2.direction);
    double c = dot(l2.direction, l2.direction);
    double d = dot(l1.direction, w);
    double e = dot(l2.direction, w);
    double denom = a * c - b * b;
    if (denom <= parallel_tol * a * c) throw near_parallel_error();
    double mu = (b * e - c * d) / denom;
    double nu = (a * e - b * d) / denom;
    Vec3 p1 = add(l1.base, scale(l1.direction, mu));
    Vec3 p2 = add(l2.base, scale(l2.direction, nu));
    return {scale(add(p1, p2), 0.5), norm(sub(p1, p2))};
}

} // namespace curveproj
