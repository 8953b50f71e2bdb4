#pragma once

// Approximate projection detection: trace the real branches of the
// constraint surface across a verified parameter strip, pair the branch
// points at the two strip edges, estimate each candidate eye by
// least-squares line intersection, and accept or reject by a sampled
// Hausdorff distance between C2 and the projected C1. Numeric eyes that
// round to small rationals are promoted through the exact certifier.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "curveproj/detect.hpp"

namespace curveproj {

class incompatible_strip_error : public error {
public:
    explicit incompatible_strip_error(const std::string& msg = "IncompatibleStrip")
        : error("IncompatibleStrip", msg) {}
};

struct BranchSample {
    double t = 0;
    std::vector<double> roots; // strictly ascending
    int count = 0;
};

struct ApproxFinding {
    Vec3 eye{0, 0, 0};       // affine eye, or unit direction when at_infinity
    bool at_infinity = false;
    double gap = 0;          // residual of the least-squares intersection
    double hausdorff = 0;
    bool accepted = false;
    double epsilon = 0;
    std::optional<ProjectionFinding> promoted; // exact upgrade when available
};

namespace detail {

// Strips factors constant in t or in s; line components never correspond to
// projections and would defeat the strip tests below.
inline BiPoly strip_line_components(const BiPoly& n) {
    BiPoly r = n;
    Poly cs = bipoly_content_s(r); // common factor in Q[t]
    if (cs.degree() > 0) r = r.divide_exact(BiPoly::from_poly_t(cs));
    BiPoly rt = r.transpose();
    Poly ct = bipoly_content_s(rt);
    if (ct.degree() > 0) r = r.divide_exact(BiPoly::from_poly_s(ct));
    return r.normalized();
}

inline bool has_root_in_closed_interval(const Poly& p, const Rat& lo, const Rat& hi) {
    if (p.degree() <= 0) return false;
    if (p.eval(lo).is_zero() || p.eval(hi).is_zero()) return true;
    for (const auto& ri : isolate_real_roots(squarefree_part(p), Rat(1, 1024)))
        if (ri.hi >= lo && ri.lo <= hi) {
            // refine the overlap decision exactly via sign tests
            if (ri.exact) {
                if (lo <= ri.lo && ri.lo <= hi) return true;
                continue;
            }
            // the isolating interval overlaps [lo,hi]; the root itself is
            // inside unless the interval merely brushes an endpoint
            Poly sf = squarefree_part(p);
            int s_lo = sf.eval(std::max(lo, ri.lo)).sign();
            int s_hi = sf.eval(std::min(hi, ri.hi)).sign();
            if (s_lo == 0 || s_hi == 0 || s_lo != s_hi) return true;
        }
    return false;
}

inline int real_root_count(const Poly& n) {
    if (n.degree() <= 0) return 0;
    return static_cast<int>(isolate_real_roots(squarefree_part(n), Rat(1, 4)).size());
}

// Best rational approximation with bounded denominator (continued fractions).
inline std::optional<Rat> rationalize(double x, long max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    double v = x;
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (std::abs(fl) > 9e15) return std::nullopt;
        Int a(static_cast<long>(fl));
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return std::nullopt;
    Rat r(p1, q1);
    if (std::abs(r.to_double() - x) > 1e-6 * (1.0 + std::abs(x))) return std::nullopt;
    return r;
}

} // namespace detail

// Sorted real-root lists of N(t1, s) and N(t2, s), after verifying that the
// strip [t1, t2] carries no vertical asymptote and no point of the surface
// where dN/dt vanishes, so index-wise pairs lie on a common branch.
inline std::pair<BranchSample, BranchSample> branch_roots(const ConstraintSurface& surface,
                                                          const Rat& t1, const Rat& t2,
                                                          const Rat& precision) {
    if (!(t1 < t2)) throw error("BadStrip", "need t1 < t2");
    BiPoly n = detail::strip_line_components(surface.ncal);
    if (n.deg_s() < 1) throw incompatible_strip_error("surface has no s-dependence");

    if (detail::has_root_in_closed_interval(n.lc_s(), t1, t2))
        throw incompatible_strip_error("vertical asymptote inside the strip");

    Poly res = bipoly_resultant_s(n, n.partial_t());
    if (res.is_zero()) throw incompatible_strip_error("degenerate resultant");
    if (detail::has_root_in_closed_interval(res, t1, t2))
        throw incompatible_strip_error("dN/dt vanishes on the surface inside the strip");

    auto roots_at = [&](const Rat& t0) -> std::optional<std::vector<double>> {
        Poly nt = n.eval_t(t0);
        if (nt.degree() < 1) return std::nullopt;
        if (poly_gcd(nt, nt.derivative()).degree() != 0) return std::nullopt;
        std::vector<double> out;
        for (const auto& ri : isolate_real_roots(nt, precision)) out.push_back(ri.mid.to_double());
        return out;
    };

    auto r1 = roots_at(t1), r2 = roots_at(t2);
    if (!r1 || !r2) throw incompatible_strip_error("strip edge is not a generic line");
    if (r1->size() != r2->size()) throw incompatible_strip_error("root counts differ");

    // interior probes: equal counts across the strip
    for (int k = 1; k <= 8; ++k) {
        Rat tm = t1 + (t2 - t1) * Rat(k, 9);
        Poly nm = n.eval_t(tm);
        if (nm.degree() < 1 || poly_gcd(nm, nm.derivative()).degree() != 0)
            throw incompatible_strip_error("interior probe is degenerate");
        if (detail::real_root_count(nm) != static_cast<int>(r1->size()))
            throw incompatible_strip_error("root count changes inside the strip");
    }

    BranchSample b1{t1.to_double(), *r1, static_cast<int>(r1->size())};
    BranchSample b2{t2.to_double(), *r2, static_cast<int>(r2->size())};
    return {b1, b2};
}

// ---------------------------------------------------------------------------
// floating-point curves
// ---------------------------------------------------------------------------

struct CurveF {
    std::array<std::vector<double>, 4> tuple; // X,Y,Z,W coefficients, ascending

    static CurveF from(const CurveParam& c) {
        CurveF f;
        for (std::size_t i = 0; i < 4; ++i) f.tuple[i] = c.projective()[i].to_doubles();
        return f;
    }

    static double horner(const std::vector<double>& c, double t) {
        double acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        return acc;
    }

    double w(double t) const { return horner(tuple[3], t); }

    std::optional<Vec3> eval(double t) const {
        double ww = w(t);
        if (ww == 0 || !std::isfinite(ww)) return std::nullopt;
        Vec3 p{horner(tuple[0], t) / ww, horner(tuple[1], t) / ww, horner(tuple[2], t) / ww};
        for (double v : p)
            if (!std::isfinite(v) || std::abs(v) > 1e8) return std::nullopt;
        return p;
    }
};

// P * tuple with a floating 4x4 matrix
inline CurveF project_curve_f(const std::array<std::array<double, 4>, 4>& P, const CurveF& c) {
    CurveF out;
    std::size_t n = 0;
    for (const auto& t : c.tuple) n = std::max(n, t.size());
    for (std::size_t i = 0; i < 4; ++i) {
        out.tuple[i].assign(n, 0.0);
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < c.tuple[j].size(); ++k)
                out.tuple[i][k] += P[i][j] * c.tuple[j][k];
    }
    return out;
}

inline std::array<std::array<double, 4>, 4> projection_matrix_f(const std::array<double, 4>& eye,
                                                                const std::array<double, 4>& pl) {
    const double a1 = eye[0], a2 = eye[1], a3 = eye[2], a4 = eye[3];
    const double A = pl[0], B = pl[1], C = pl[2], D = pl[3];
    return {{{-a2 * B - a3 * C - a4 * D, a1 * B, a1 * C, a1 * D},
             {a2 * A, -a1 * A - a3 * C - a4 * D, a2 * C, a2 * D},
             {a3 * A, a3 * B, -a1 * A - a2 * B - a4 * D, a3 * D},
             {a4 * A, a4 * B, a4 * C, -a1 * A - a2 * B - a3 * C}}};
}

namespace detail {

struct SampledCurve {
    std::vector<Vec3> points;
    std::vector<bool> joined; // joined[i]: segment points[i] -- points[i+1] is real
};

// Samples the full real parameter line through the chart t = u / (1 - u^2),
// breaking the polyline at poles (denominator sign changes or skipped
// samples) so no spurious chord spans a parameter gap.
inline SampledCurve sample_curve(const CurveF& c, int n_samples) {
    SampledCurve sc;
    std::vector<std::optional<Vec3>> raw(static_cast<std::size_t>(n_samples));
    std::vector<double> ws(static_cast<std::size_t>(n_samples), 0.0);
    for (int k = 0; k < n_samples; ++k) {
        double u = -1.0 + 2.0 * (k + 0.5) / n_samples;
        double t = u / (1.0 - u * u);
        raw[static_cast<std::size_t>(k)] = c.eval(t);
        ws[static_cast<std::size_t>(k)] = c.w(t);
    }
    std::vector<int> index(static_cast<std::size_t>(n_samples), -1);
    for (int k = 0; k < n_samples; ++k)
        if (raw[static_cast<std::size_t>(k)]) {
            index[static_cast<std::size_t>(k)] = static_cast<int>(sc.points.size());
            sc.points.push_back(*raw[static_cast<std::size_t>(k)]);
        }
    sc.joined.assign(sc.points.size() > 0 ? sc.points.size() - 1 : 0, false);
    for (int k = 0; k + 1 < n_samples; ++k) {
        int i = index[static_cast<std::size_t>(k)], j = index[static_cast<std::size_t>(k) + 1];
        if (i < 0 || j != i + 1) continue;
        if (ws[static_cast<std::size_t>(k)] * ws[static_cast<std::size_t>(k) + 1] <= 0) continue;
        sc.joined[static_cast<std::size_t>(i)] = true;
    }
    return sc;
}

inline double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = sub(b, a), ap = sub(p, a);
    double denom = dot(ab, ab);
    double t = denom > 0 ? std::clamp(dot(ap, ab) / denom, 0.0, 1.0) : 0.0;
    Vec3 q = add(a, scale(ab, t));
    return norm(sub(p, q));
}

inline double directed_distance(const SampledCurve& from, const SampledCurve& to) {
    double worst = 0;
    for (const auto& p : from.points) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < to.points.size(); ++i) {
            if (i + 1 < to.points.size() && to.joined[i])
                best = std::min(best, point_segment_distance(p, to.points[i], to.points[i + 1]));
            else
                best = std::min(best, norm(sub(p, to.points[i])));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

inline void check_same_plane(const SampledCurve& a, const SampledCurve& b) {
    // fit a plane to the first curve's samples, then bound both deviations
    if (a.points.size() < 3 || b.points.empty()) throw plane_mismatch_error("not enough samples");
    const Vec3& p0 = a.points.front();
    Vec3 e1{0, 0, 0}, nrm{0, 0, 0};
    double best = 0;
    for (const auto& p : a.points) {
        Vec3 d = sub(p, p0);
        if (norm(d) > best) {
            best = norm(d);
            e1 = d;
        }
    }
    double area = 0;
    for (const auto& p : a.points) {
        Vec3 c = cross3(e1, sub(p, p0));
        if (norm(c) > area) {
            area = norm(c);
            nrm = c;
        }
    }
    double nn = norm(nrm);
    if (nn == 0) throw plane_mismatch_error("first curve samples are collinear");
    nrm = scale(nrm, 1.0 / nn);
    double scale_len = 1.0 + best;
    double tol = 1e-6 * scale_len;
    for (const auto& p : a.points)
        if (std::abs(dot(nrm, sub(p, p0))) > tol) throw plane_mismatch_error("first curve not planar");
    for (const auto& p : b.points)
        if (std::abs(dot(nrm, sub(p, p0))) > tol)
            throw plane_mismatch_error("curves lie in different planes");
}

} // namespace detail

// Symmetric sampled Hausdorff estimate between two planar curves.
inline double hausdorff_estimate(const CurveF& a, const CurveF& b, int n_samples) {
    if (n_samples < 64) throw error("BadSampleCount", "need at least 64 samples");
    auto sa = detail::sample_curve(a, n_samples);
    auto sb = detail::sample_curve(b, n_samples);
    detail::check_same_plane(sa, sb);
    return std::max(detail::directed_distance(sa, sb), detail::directed_distance(sb, sa));
}

inline double hausdorff_estimate(const CurveParam& a, const CurveParam& b, int n_samples) {
    return hausdorff_estimate(CurveF::from(a), CurveF::from(b), n_samples);
}

struct ApproxOptions {
    double epsilon = 1e-3;
    int n_samples = 2048;
    Rat precision = Rat(1, 1000000000000L); // root refinement width
    long promote_max_den = 1000000;
};

struct EyeCandidate {
    Vec3 eye{0, 0, 0};
    bool at_infinity = false;
    double gap = 0;
    int branch = 0;
};

// One tentative eye per compatible branch pair, via least-squares
// intersection of the two witness lines. Branch pairs failing the numeric
// luckiness screen are skipped.
inline std::vector<EyeCandidate> approx_eye_candidates(const CurveParam& c1, const CurveParam& c2,
                                                       const Rat& t1, const Rat& t2,
                                                       const std::pair<BranchSample, BranchSample>& pair) {
    std::vector<EyeCandidate> out;
    if (pair.first.count != pair.second.count) return out;

    CurveF f1 = CurveF::from(c1), f2 = CurveF::from(c2);
    Poly selfint = self_intersection_params(c2);
    auto self_ok = [&](double s) {
        return std::abs(selfint.eval(s)) > 1e-9;
    };
    if (c1.is_pole(t1) || c1.is_pole(t2)) return out;

    auto p1e = *c1.affine_at(t1);
    auto p2e = *c1.affine_at(t2);
    Vec3 p1{p1e[0].to_double(), p1e[1].to_double(), p1e[2].to_double()};
    Vec3 p2{p2e[0].to_double(), p2e[1].to_double(), p2e[2].to_double()};

    for (int i = 0; i < pair.first.count; ++i) {
        double s1 = pair.first.roots[static_cast<std::size_t>(i)];
        double s2 = pair.second.roots[static_cast<std::size_t>(i)];
        auto q1 = f2.eval(s1), q2 = f2.eval(s2);
        if (!q1 || !q2) continue;                        // root at a pole of x2
        if (!self_ok(s1) || !self_ok(s2)) continue;      // self-intersection of C2
        if (norm(sub(p1, *q1)) < 1e-9 || norm(sub(p2, *q2)) < 1e-9) continue; // p == q
        Line3F l1{p1, sub(*q1, p1)}, l2{p2, sub(*q2, p2)};
        EyeCandidate cand;
        cand.branch = i;
        try {
            auto hit = pseudo_intersect_least_squares(l1, l2);
            cand.eye = hit.point;
            cand.gap = hit.gap;
        } catch (const near_parallel_error&) {
            Vec3 dir = l1.direction;
            double n1 = norm(dir);
            if (n1 == 0) continue;
            dir = scale(dir, 1.0 / n1);
            for (double v : dir) {
                if (std::abs(v) > 1e-12) {
                    if (v < 0) dir = scale(dir, -1.0);
                    break;
                }
            }
            cand.eye = dir;
            cand.at_infinity = true;
            // distance between the parallel lines
            Vec3 w = sub(l2.base, l1.base);
            Vec3 cr = cross3(w, dir);
            cand.gap = norm(cr);
        }
        out.push_back(cand);
    }
    return out;
}

namespace detail {

// Attempt the exact upgrade: rationalize the eye, recover psi from the gcd
// of the image-difference numerators, certify. Never rejects the numeric
// finding; only annotates it.
inline std::optional<ProjectionFinding> promote_candidate(const EyeCandidate& cand,
                                                          const CurveParam& c1,
                                                          const CurveParam& c2,
                                                          const ConstraintSurface& surface,
                                                          long max_den) {
    std::array<std::optional<Rat>, 3> r;
    for (int i = 0; i < 3; ++i) {
        r[static_cast<std::size_t>(i)] = rationalize(cand.eye[static_cast<std::size_t>(i)], max_den);
        if (!r[static_cast<std::size_t>(i)]) return std::nullopt;
    }
    ProjPoint eye = cand.at_infinity ? ProjPoint(*r[0], *r[1], *r[2], Rat(0))
                                     : ProjPoint::affine(*r[0], *r[1], *r[2]);
    auto plq = plane_of_curve(c2);
    if (!plq.plane || plq.plane->contains(eye)) return std::nullopt;

    try {
        ProjMatrix P = build_projection_matrix(eye, *plq.plane);
        CurveParam image = apply_projection(P, c1);
        auto nums = difference_numerators(image, c2);
        BiPoly g;
        bool all_zero = true;
        for (const auto& ni : nums) {
            if (ni.is_zero()) continue;
            all_zero = false;
            g = g.is_zero() ? ni : bipoly_gcd(g, ni);
        }
        if (all_zero || g.is_constant() || g.deg_s() != 1) return std::nullopt;
        // g = A(t) s + B(t): the correspondence is s = -B/A
        Poly A = g.coeff_of_s(1), B = g.coeff_of_s(0);
        RatFun psi(-B, A);
        if (psi.degree() < 1) return std::nullopt;
        PsiCandidate pc;
        pc.psi = psi;
        pc.g = detail::associated_polynomial(psi);
        pc.divisibility_ok = pc.g.divides(surface.ncal);
        if (!pc.divisibility_ok) return std::nullopt;
        auto out = certify_exact(pc, eye, c1, c2);
        if (out.finding) return out.finding;
    } catch (const error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace detail

// Full approximate pipeline.
inline std::vector<ApproxFinding> detect_approx(const CurveParam& c1, const CurveParam& c2,
                                                const ApproxOptions& opts = {}) {
    validate_detect_inputs(c1, c2);
    ConstraintSurface surface = compute_constraint_surface(c1, c2);

    // deterministic strip search; the first verified strip with branches wins
    static const std::pair<long, long> starts[] = {{2, 2}, {3, 2}, {1, 2},  {4, 2}, {0, 2},
                                                   {5, 2}, {-1, 2}, {6, 2}, {-2, 2}, {7, 2},
                                                   {-3, 2}, {8, 2}, {-4, 2}, {9, 2}, {-5, 2}};
    std::optional<std::pair<BranchSample, BranchSample>> strip;
    Rat st1, st2;
    for (int halving = 0; halving < 3 && !strip; ++halving) {
        for (const auto& [num, den] : starts) {
            Rat a(num, den);
            Rat w = Rat(1, 2 * (1L << halving));
            try {
                auto bs = branch_roots(surface, a, a + w, opts.precision);
                if (bs.first.count == 0) continue;
                strip = bs;
                st1 = a;
                st2 = a + w;
                break;
            } catch (const incompatible_strip_error&) {
                continue;
            }
        }
    }
    if (!strip) return {};

    auto plq = plane_of_curve(c2);
    std::array<double, 4> plane_f{plq.plane->a().to_double(), plq.plane->b().to_double(),
                                  plq.plane->c().to_double(), plq.plane->d().to_double()};

    CurveF f1 = CurveF::from(c1);
    CurveF f2 = CurveF::from(c2);

    std::vector<ApproxFinding> out;
    for (const auto& cand : approx_eye_candidates(c1, c2, st1, st2, *strip)) {
        ApproxFinding f;
        f.eye = cand.eye;
        f.at_infinity = cand.at_infinity;
        f.gap = cand.gap;
        f.epsilon = opts.epsilon;

        std::array<double, 4> eye4 = cand.at_infinity
                                         ? std::array<double, 4>{cand.eye[0], cand.eye[1], cand.eye[2], 0.0}
                                         : std::array<double, 4>{cand.eye[0], cand.eye[1], cand.eye[2], 1.0};
        auto Pf = projection_matrix_f(eye4, plane_f);
        CurveF image = project_curve_f(Pf, f1);
        try {
            f.hausdorff = hausdorff_estimate(image, f2, opts.n_samples);
        } catch (const plane_mismatch_error&) {
            f.hausdorff = std::numeric_limits<double>::infinity();
        }
        f.accepted = f.hausdorff < f.epsilon;
        if (f.accepted)
            f.promoted = detail::promote_candidate(cand, c1, c2, surface, opts.promote_max_den);
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace curveproj
