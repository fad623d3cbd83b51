#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "curvelink/frame.hpp"
#include "curvelink/isometry.hpp"
#include "curvelink/space.hpp"

namespace curvelink {

/// A smooth closed curve, either analytic (closed-form position and velocity
/// over the half-open parameter interval [0, period)) or polygonal (ordered
/// closed vertex list, parametrized by index). Orientation ±1 flips the
/// traversal direction at sampling time.
class Curve {
public:
    using PosFn = std::function<Vec4(double)>;

    static Curve analytic(Space space, double period, PosFn pos, PosFn vel) {
        Curve k;
        k.space_ = space;
        k.period_ = period;
        k.pos_ = std::move(pos);
        k.vel_ = std::move(vel);
        return k;
    }

    static Curve polygonal(Space space, std::vector<Vec4> points) {
        if (points.size() < 8)
            throw precondition_error("polygonal curve needs at least 8 vertices");
        Curve k;
        k.space_ = space;
        k.period_ = static_cast<double>(points.size());
        k.points_ = std::move(points);
        return k;
    }

    Space space() const { return space_; }
    double period() const { return period_; }
    int orientation() const { return orientation_; }
    bool is_analytic() const { return pos_ != nullptr; }
    const std::vector<Vec4>& points() const { return points_; }

    Vec4 position(double s) const {
        if (!pos_) throw precondition_error("position(): polygonal curve");
        return pos_(s);
    }
    Vec4 velocity(double s) const {
        if (!vel_) throw precondition_error("velocity(): polygonal curve");
        return vel_(s);
    }

    /// Gap between the parametrization's two ends, |pos(0) − pos(period)|.
    double closure_residual() const {
        if (!pos_) return 0.0;  // polygonal closure is implied by the list
        return norm4(pos_(0.0) - pos_(period_));
    }

    Curve reversed() const {
        Curve k = *this;
        k.orientation_ = -orientation_;
        return k;
    }

    Curve with_orientation(int orient) const {
        Curve k = *this;
        k.orientation_ = orient >= 0 ? 1 : -1;
        return k;
    }

    /// Image of the curve under an isometry of its space.
    Curve transformed(const Isometry& iso) const {
        if (iso.space != space_)
            throw precondition_error("transformed(): isometry space mismatch");
        Curve k = *this;
        if (pos_) {
            auto p = pos_;
            auto v = vel_;
            k.pos_ = [iso, p](double s) { return iso.apply_point(p(s)); };
            k.vel_ = [iso, v](double s) { return iso.apply_tangent(v(s)); };
        }
        for (auto& pt : k.points_) pt = iso.apply_point(pt);
        return k;
    }

private:
    Space space_ = Space::R3;
    double period_ = 0.0;
    int orientation_ = 1;
    PosFn pos_;
    PosFn vel_;
    std::vector<Vec4> points_;
};

/// Discrete snapshot of a curve: n positions and velocities on a uniform
/// parameter grid, plus the parameter step. The integrands consume exactly
/// this.
struct CurveSamples {
    Space space = Space::R3;
    std::vector<Vec4> positions;
    std::vector<Vec4> velocities;
    double parameter_step = 0.0;
    double closure_residual = 0.0;

    std::size_t size() const { return positions.size(); }

    /// Reversed traversal: sample order flipped, velocities negated.
    /// Applying it twice restores the original bit for bit.
    CurveSamples reversed() const {
        CurveSamples r = *this;
        std::reverse(r.positions.begin(), r.positions.end());
        std::reverse(r.velocities.begin(), r.velocities.end());
        for (auto& v : r.velocities) v = -v;
        return r;
    }

    CurveSamples transformed(const Isometry& iso) const {
        if (iso.space != space)
            throw precondition_error("transformed(): isometry space mismatch");
        CurveSamples r = *this;
        for (auto& p : r.positions) p = iso.apply_point(p);
        for (auto& v : r.velocities) v = iso.apply_tangent(v);
        return r;
    }
};

/// Great circle s ↦ cos(s)·u + sin(s)·v on S³, period 2π. u, v must be
/// Euclidean-orthonormal.
inline Curve great_circle(const Vec4& u, const Vec4& v) {
    if (std::abs(dot4(u, u) - 1.0) > 1e-9 || std::abs(dot4(v, v) - 1.0) > 1e-9 ||
        std::abs(dot4(u, v)) > 1e-9)
        throw precondition_error("great_circle: u, v must be orthonormal");
    return Curve::analytic(
        Space::S3, 2.0 * kPi,
        [u, v](double s) { return std::cos(s) * u + std::sin(s) * v; },
        [u, v](double s) { return -std::sin(s) * u + std::cos(s) * v; });
}

namespace detail {

// Inverse stereographic projection from the pole (−1,0,0,0):
// q ∈ R³ ↦ ((1−|q|²)/(1+|q|²), 2q/(1+|q|²)). Orientation preserving.
inline Vec4 stereo_embed(const Vec4& q) {
    double r2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    double d = 1.0 + r2;
    return {(1.0 - r2) / d, 2.0 * q[1] / d, 2.0 * q[2] / d, 2.0 * q[3] / d};
}

inline Vec4 stereo_embed_velocity(const Vec4& q, const Vec4& dq) {
    double r2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    double d = 1.0 + r2;
    double qdq = q[1] * dq[1] + q[2] * dq[2] + q[3] * dq[3];
    Vec4 out;
    out[0] = -4.0 * qdq / (d * d);
    for (int i = 1; i < 4; ++i) out[i] = 2.0 * dq[i] / d - 4.0 * q[i] * qdq / (d * d);
    return out;
}

// Graph embedding of R³ into the hyperboloid: q ↦ (√(1+|q|²), q).
inline Vec4 graph_embed(const Vec4& q) {
    double r2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    return {std::sqrt(1.0 + r2), q[1], q[2], q[3]};
}

inline Vec4 graph_embed_velocity(const Vec4& q, const Vec4& dq) {
    double r2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    double qdq = q[1] * dq[1] + q[2] * dq[2] + q[3] * dq[3];
    return {qdq / std::sqrt(1.0 + r2), dq[1], dq[2], dq[3]};
}

inline double max_radius(const Curve& k) {
    double m = 0.0;
    if (k.is_analytic()) {
        for (int i = 0; i < 256; ++i)
            m = std::max(m, norm4(k.position(k.period() * i / 256.0)));
    } else {
        for (const auto& p : k.points()) m = std::max(m, norm4(p));
    }
    return m;
}

}  // namespace detail

/// Carries a closed R³ curve onto S³ (inverse stereographic projection from
/// the pole (−1,0,0,0)) or onto H³ (graph embedding), after scaling by
/// `scale`. Both maps are homeomorphisms onto their images, so linking
/// numbers survive the trip. On S³ the scaled curve must keep
/// scale·max|p| < π/2, which also keeps every image point at distance
/// > 0.1 from the projection pole.
inline Curve embed_r3_curve(Space space, const Curve& k, double scale) {
    if (k.space() != Space::R3) throw precondition_error("embed_r3_curve: source not in R3");
    if (!(scale > 0.0)) throw precondition_error("embed_r3_curve: scale must be positive");
    if (space == Space::R3) throw precondition_error("embed_r3_curve: target must be curved");

    double rmax = scale * detail::max_radius(k);
    if (space == Space::S3) {
        if (!(rmax < kPi / 2.0))
            throw precondition_error("embed_r3_curve: scale·max|p| must stay below pi/2");
        // distance from the pole is π − 2·atan(|q|); demand it exceed 0.1
        if (kPi - 2.0 * std::atan(rmax) < 0.1)
            throw precondition_error("embed_r3_curve: curve reaches too close to the pole");
    }

    const bool to_s3 = (space == Space::S3);
    if (k.is_analytic()) {
        Curve base = k;
        return Curve::analytic(
                   space, k.period(),
                   [base, scale, to_s3](double s) {
                       Vec4 q = scale * base.position(s);
                       return to_s3 ? detail::stereo_embed(q) : detail::graph_embed(q);
                   },
                   [base, scale, to_s3](double s) {
                       Vec4 q = scale * base.position(s);
                       Vec4 dq = scale * base.velocity(s);
                       return to_s3 ? detail::stereo_embed_velocity(q, dq)
                                    : detail::graph_embed_velocity(q, dq);
                   })
            .with_orientation(k.orientation());
    }
    std::vector<Vec4> pts;
    pts.reserve(k.points().size());
    for (const auto& p : k.points()) {
        Vec4 q = scale * p;
        pts.push_back(to_s3 ? detail::stereo_embed(q) : detail::graph_embed(q));
    }
    return Curve::polygonal(space, std::move(pts)).with_orientation(k.orientation());
}

/// Uniform sampling of a curve. Analytic curves use their exact velocities;
/// polygonal curves take their vertices (n must equal the vertex count or
/// divide it) with 4th-order periodic central-difference velocities,
/// projected back onto the tangent space.
inline CurveSamples sample(const Curve& k, std::size_t n) {
    if (n < 8) throw precondition_error("sample: need n >= 8");
    CurveSamples out;
    out.space = k.space();
    out.positions.resize(n);
    out.velocities.resize(n);
    out.closure_residual = k.closure_residual();

    if (k.is_analytic()) {
        double step = k.period() / static_cast<double>(n);
        out.parameter_step = step;
        for (std::size_t i = 0; i < n; ++i) {
            double s = static_cast<double>(i) * step;
            out.positions[i] = k.position(s);
            out.velocities[i] = k.velocity(s);
        }
    } else {
        const auto& pts = k.points();
        std::size_t m = pts.size();
        if (m % n != 0)
            throw precondition_error("sample: n must divide the polygonal vertex count");
        std::size_t stride = m / n;
        double step = k.period() / static_cast<double>(n);
        out.parameter_step = step;
        for (std::size_t i = 0; i < n; ++i) out.positions[i] = pts[i * stride];
        for (std::size_t i = 0; i < n; ++i) {
            const Vec4& p1 = out.positions[(i + 1) % n];
            const Vec4& p2 = out.positions[(i + 2) % n];
            const Vec4& m1 = out.positions[(i + n - 1) % n];
            const Vec4& m2 = out.positions[(i + n - 2) % n];
            Vec4 v = (-1.0 * p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * step);
            out.velocities[i] = project_to_tangent(k.space(), out.positions[i], v);
        }
    }
    if (k.orientation() < 0) out = out.reversed();
    return out;
}

/// Minimum geodesic distance over all sample pairs. A lower-bound estimate
/// only: the true curve-to-curve distance can dip between samples.
inline double min_pair_distance(const CurveSamples& k1, const CurveSamples& k2) {
    if (k1.space != k2.space) throw precondition_error("min_pair_distance: space mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : k1.positions)
        for (const auto& q : k2.positions) best = std::min(best, distance(k1.space, p, q));
    return best;
}

struct ValidationCheck {
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool pass = true;
};

/// On-manifold, tangency and closure residuals of a sample set, against the
/// thresholds 1e−8 / 1e−6 / 1e−8.
inline ValidationReport validate(const CurveSamples& k) {
    ValidationReport rep;
    double on_manifold = 0.0, tangency = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        on_manifold = std::max(on_manifold, point_residual(k.space, k.positions[i]));
        tangency = std::max(tangency,
                            tangency_residual(k.space, k.positions[i], k.velocities[i]));
    }
    auto add = [&rep](std::string name, double res, double thr) {
        bool ok = res <= thr;
        rep.checks.push_back({std::move(name), res, thr, ok});
        rep.pass = rep.pass && ok;
    };
    add("on_manifold", on_manifold, 1e-8);
    add("tangency", tangency, 1e-6);
    add("closure", k.closure_residual, 1e-8);
    return rep;
}

}  // namespace curvelink
