#pragma once

#include <cmath>

#include "curvelink/space.hpp"
#include "curvelink/vec4.hpp"

namespace curvelink {

/// Parallel transport of a tangent vector v from x to y along the minimizing
/// geodesic:  P_yx v = v − ⟨y,v⟩/(1 + ⟨x,y⟩) (x + y),  the same expression on
/// S³ and H³ with the respective bilinear forms. On R³ transport is the
/// identity. Preserves the Riemannian inner product; singular on S³ when
/// y is (numerically) the antipode of x.
inline Vec4 parallel_transport(Space s, const Vec4& x, const Vec4& y, const Vec4& v) {
    if (s == Space::R3) return v;
    double d = 1.0 + inner(s, x, y);
    if (s == Space::S3 && d < kAntipodalEps)
        throw singularity_error("parallel_transport: antipodal points on S3");
    return v - (inner(s, y, v) / d) * (x + y);
}

/// Orthonormal tangent frame at a point.
struct Frame {
    Vec4 e1, e2, e3;

    Vec4 operator[](int i) const { return i == 0 ? e1 : (i == 1 ? e2 : e3); }

    /// Coordinates of a tangent vector in this frame (Riemannian metric).
    Vec4 coords(Space s, const Vec4& v) const {
        return {0.0, metric_dot(s, v, e1), metric_dot(s, v, e2), metric_dot(s, v, e3)};
    }
};

/// The moving frame E_i = P_yx X_i obtained by transporting the coordinate
/// basis at the base point (1,0,0,0) to y. Matches the closed forms
///   S³: E₁ = (−y₁, 1 − y₁²/(1+y₀), −y₁y₂/(1+y₀), −y₁y₃/(1+y₀)), …
///   H³: E₁ = ( y₁, 1 + y₁²/(1+y₀),  y₁y₂/(1+y₀),  y₁y₃/(1+y₀)), …
inline Frame moving_frame(Space s, const Vec4& y) {
    if (s == Space::R3) return {kBasis1, kBasis2, kBasis3};
    return {parallel_transport(s, kBasis0, y, kBasis1),
            parallel_transport(s, kBasis0, y, kBasis2),
            parallel_transport(s, kBasis0, y, kBasis3)};
}

/// Positively oriented orthonormal frame at y built from projected
/// coordinate axes; works at every point (unlike moving_frame, which is
/// singular at the antipode of the base point). e3 = e1 × e2 by
/// construction, so (e1 × e2) • e3 = +1.
inline Frame local_frame(Space s, const Vec4& y) {
    if (s == Space::R3) return {kBasis1, kBasis2, kBasis3};
    const Vec4 axes[4] = {kBasis1, kBasis2, kBasis3, kBasis0};
    Vec4 basis[2];
    int found = 0;
    for (int k = 0; k < 4 && found < 2; ++k) {
        Vec4 w = project_to_tangent(s, y, axes[k]);
        for (int j = 0; j < found; ++j) w -= metric_dot(s, w, basis[j]) * basis[j];
        double n = metric_norm(s, w);
        if (n > 0.1) basis[found++] = w / n;
    }
    Vec4 e3 = cross_at(s, y, basis[0], basis[1]);
    return {basis[0], basis[1], e3};
}

/// Point at arc length t along the geodesic through y in the unit tangent
/// direction e.
inline Vec4 geodesic_point(Space s, const Vec4& y, const Vec4& e, double t) {
    switch (s) {
        case Space::R3: return y + t * e;
        case Space::S3: return std::cos(t) * y + std::sin(t) * e;
        case Space::H3: return std::cosh(t) * y + std::sinh(t) * e;
    }
    return {};
}

/// Velocity of the geodesic above at arc length t.
inline Vec4 geodesic_velocity(Space s, const Vec4& y, const Vec4& e, double t) {
    switch (s) {
        case Space::R3: return e;
        case Space::S3: return -std::sin(t) * y + std::cos(t) * e;
        case Space::H3: return std::sinh(t) * y + std::cosh(t) * e;
    }
    return {};
}

}  // namespace curvelink
