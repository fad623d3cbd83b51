#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvelink/curves.hpp"
#include "curvelink/isometry.hpp"
#include "curvelink/space.hpp"

namespace curvelink {

/// Closed polygonal curve in R³ (ambient component 0 fixed at zero),
/// oriented by vertex order. Input to the crossing-count oracle.
struct PolygonalCurveR3 {
    std::vector<Vec4> points;

    void check() const {
        if (points.size() < 16)
            throw precondition_error("PolygonalCurveR3: need at least 16 vertices");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vec4& a = points[i];
            const Vec4& b = points[(i + 1) % points.size()];
            if (norm4(a - b) < 1e-14)
                throw precondition_error("PolygonalCurveR3: repeated consecutive vertex");
        }
    }

    PolygonalCurveR3 reversed() const {
        PolygonalCurveR3 r = *this;
        std::reverse(r.points.begin(), r.points.end());
        return r;
    }
};

/// Candidate stereographic poles: a fixed seeded 200-point covering of S³.
inline const std::vector<Vec4>& s3_pole_design() {
    static const std::vector<Vec4> design = [] {
        std::vector<Vec4> pts;
        Rng rng(0xC0FFEEULL);
        pts.push_back({-1, 0, 0, 0});
        pts.push_back({1, 0, 0, 0});
        pts.push_back({0, -1, 0, 0});
        pts.push_back({0, 0, -1, 0});
        pts.push_back({0, 0, 0, -1});
        while (pts.size() < 200) {
            Vec4 g = rng.gaussian_vec4();
            double n = norm4(g);
            if (n > 1e-3) pts.push_back(g / n);
        }
        return pts;
    }();
    return design;
}

/// Pole of S³ farthest (in min-distance sense) from both curves; the
/// stereographic projection from it keeps both images well conditioned.
inline Vec4 choose_projection_pole(const CurveSamples& k1, const CurveSamples& k2) {
    double best = -1.0;
    Vec4 pole{-1, 0, 0, 0};
    for (const Vec4& cand : s3_pole_design()) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& p : k1.positions) dmin = std::min(dmin, distance(Space::S3, cand, p));
        for (const auto& p : k2.positions) dmin = std::min(dmin, distance(Space::S3, cand, p));
        if (dmin > best) {
            best = dmin;
            pole = cand;
        }
    }
    return pole;
}

/// Homeomorphic, orientation-preserving projection of curve samples to R³:
/// stereographic from a pole on S³ (the pole is first rotated to
/// (−1,0,0,0), then q = x⃗/(1+x₀)), the graph projection (x₀,x⃗) ↦ x⃗ on H³,
/// and the identity on R³. Linking numbers are preserved.
inline PolygonalCurveR3 project_to_r3(Space space, const CurveSamples& k,
                                      std::optional<Vec4> pole_hint = std::nullopt) {
    PolygonalCurveR3 out;
    out.points.reserve(k.size());
    switch (space) {
        case Space::R3:
            out.points = k.positions;
            break;
        case Space::H3:
            for (const auto& p : k.positions) out.points.push_back({0.0, p[1], p[2], p[3]});
            break;
        case Space::S3: {
            Vec4 pole = pole_hint.value_or([&] {
                double best = -1.0;
                Vec4 sel{-1, 0, 0, 0};
                for (const Vec4& cand : s3_pole_design()) {
                    double dmin = std::numeric_limits<double>::infinity();
                    for (const auto& p : k.positions)
                        dmin = std::min(dmin, distance(Space::S3, cand, p));
                    if (dmin > best) {
                        best = dmin;
                        sel = cand;
                    }
                }
                return sel;
            }());
            for (const auto& p : k.positions)
                if (distance(Space::S3, pole, p) < 0.1)
                    throw precondition_error("project_to_r3: curve within 0.1 of the pole");
            Mat4 rot = rotation_taking(pole, {-1, 0, 0, 0});
            for (const auto& p : k.positions) {
                Vec4 x = rot * p;
                double d = 1.0 + x[0];
                out.points.push_back({0.0, x[1] / d, x[2] / d, x[3] / d});
            }
            break;
        }
    }
    out.check();
    return out;
}

namespace detail {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline double orient2d(const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

// Extended-precision recomputation for near-degenerate orientation signs.
inline double orient2d_exact(const Vec2& p, const Vec2& q, const Vec2& r) {
    long double v = (static_cast<long double>(q.x) - p.x) *
                        (static_cast<long double>(r.y) - p.y) -
                    (static_cast<long double>(q.y) - p.y) *
                        (static_cast<long double>(r.x) - p.x);
    return static_cast<double>(v);
}

struct ProjectedCurve {
    std::vector<Vec2> uv;
    std::vector<double> depth;
    std::size_t size() const { return uv.size(); }
};

struct CrossingTally {
    long long signed_sum = 0;
    bool degenerate = false;
};

}  // namespace detail

/// Signed-crossing linking number of two disjoint closed polygonal curves.
/// Projects along `direction` (or seeded random directions with "auto"),
/// counts proper inter-curve crossings with sign +1 when
/// (tangent_over, tangent_under, direction) is right-handed, and returns
/// half the signed sum. Retries up to 100 directions when a genericity
/// margin is violated; the result is independent of the chosen generic
/// direction.
inline long long crossing_linking(const PolygonalCurveR3& p1, const PolygonalCurveR3& p2,
                                  std::optional<Vec4> direction = std::nullopt) {
    p1.check();
    p2.check();

    // scale for relative degeneracy margins
    double scale = 1e-12;
    for (const auto& p : p1.points) scale = std::max(scale, norm4(p));
    for (const auto& p : p2.points) scale = std::max(scale, norm4(p));
    const double margin = 1e-8 * scale * scale;
    const double depth_margin = 1e-8 * scale;

    auto attempt = [&](const Vec4& dir) -> detail::CrossingTally {
        // right-handed frame (u, v, dir)
        Vec4 d = dir / norm4(dir);
        Vec4 seed = std::abs(d[1]) < 0.8 ? kBasis1 : kBasis2;
        Vec4 u = seed - inner(Space::R3, seed, d) * d;
        u = u / norm4(u);
        Vec4 v = cross_at(Space::R3, {}, d, u);

        auto project = [&](const PolygonalCurveR3& c) {
            detail::ProjectedCurve pc;
            pc.uv.reserve(c.points.size());
            for (const auto& p : c.points) {
                pc.uv.push_back({inner(Space::R3, p, u), inner(Space::R3, p, v)});
                pc.depth.push_back(inner(Space::R3, p, d));
            }
            return pc;
        };
        detail::ProjectedCurve a = project(p1), b = project(p2);

        detail::CrossingTally tally;
        std::size_t na = a.size(), nb = b.size();
        const double inflate = 1e-8 * scale;
        for (std::size_t i = 0; i < na && !tally.degenerate; ++i) {
            const detail::Vec2 &a1 = a.uv[i], &a2 = a.uv[(i + 1) % na];
            double alox = std::min(a1.x, a2.x) - inflate, ahix = std::max(a1.x, a2.x) + inflate;
            double aloy = std::min(a1.y, a2.y) - inflate, ahiy = std::max(a1.y, a2.y) + inflate;
            for (std::size_t j = 0; j < nb; ++j) {
                const detail::Vec2 &b1 = b.uv[j], &b2 = b.uv[(j + 1) % nb];
                // box prefilter: non-overlapping segment pairs can neither
                // cross nor be ambiguous
                if (std::max(b1.x, b2.x) < alox || std::min(b1.x, b2.x) > ahix ||
                    std::max(b1.y, b2.y) < aloy || std::min(b1.y, b2.y) > ahiy)
                    continue;
                auto firm = [&](const detail::Vec2& p, const detail::Vec2& q,
                                const detail::Vec2& r) {
                    double o = detail::orient2d(p, q, r);
                    if (std::abs(o) >= margin) return o;
                    return detail::orient2d_exact(p, q, r);
                };
                double o1 = firm(a1, a2, b1);
                double o2 = firm(a1, a2, b2);
                double o3 = firm(b1, b2, a1);
                double o4 = firm(b1, b2, a2);
                bool separated = (o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0);
                double omin = std::min(std::min(std::abs(o1), std::abs(o2)),
                                       std::min(std::abs(o3), std::abs(o4)));
                if (separated && omin >= margin) continue;
                if (omin < margin) {
                    tally.degenerate = true;
                    break;
                }
                // proper crossing: split parameters and depths
                double s = o3 / (o3 - o4);  // along segment a
                double t = o1 / (o1 - o2);  // along segment b
                double da = a.depth[i] + s * (a.depth[(i + 1) % na] - a.depth[i]);
                double db = b.depth[j] + t * (b.depth[(j + 1) % nb] - b.depth[j]);
                if (std::abs(da - db) < depth_margin) {
                    tally.degenerate = true;
                    break;
                }
                detail::Vec2 ta{a2.x - a1.x, a2.y - a1.y};
                detail::Vec2 tb{b2.x - b1.x, b2.y - b1.y};
                detail::Vec2 over = (da > db) ? ta : tb;
                detail::Vec2 under = (da > db) ? tb : ta;
                double cr = over.x * under.y - over.y * under.x;
                if (std::abs(cr) < margin) {
                    tally.degenerate = true;
                    break;
                }
                tally.signed_sum += (cr > 0) ? 1 : -1;
            }
        }
        return tally;
    };

    if (direction) {
        detail::CrossingTally t = attempt(*direction);
        if (t.degenerate)
            throw precondition_error("crossing_linking: direction is not generic");
        if (t.signed_sum % 2 != 0)
            throw precondition_error("crossing_linking: odd crossing sum (curves intersect?)");
        return t.signed_sum / 2;
    }

    Rng rng(0x5EEDULL);
    for (int tries = 0; tries < 100; ++tries) {
        Vec4 dir{0.0, rng.normal(), rng.normal(), rng.normal()};
        if (norm4(dir) < 1e-3) continue;
        detail::CrossingTally t = attempt(dir);
        if (!t.degenerate && t.signed_sum % 2 == 0) return t.signed_sum / 2;
    }
    throw precondition_error("crossing_linking: no generic direction found in 100 tries");
}

/// End-to-end oracle: project both curves with a shared pole (on S³) and
/// count crossings.
inline long long oracle_linking(const CurveSamples& k1, const CurveSamples& k2) {
    if (k1.space != k2.space) throw precondition_error("oracle_linking: space mismatch");
    std::optional<Vec4> pole;
    if (k1.space == Space::S3) pole = choose_projection_pole(k1, k2);
    PolygonalCurveR3 p1 = project_to_r3(k1.space, k1, pole);
    PolygonalCurveR3 p2 = project_to_r3(k1.space, k2, pole);
    return crossing_linking(p1, p2);
}

}  // namespace curvelink
