#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "curvelink/vec4.hpp"

namespace curvelink {

inline constexpr double kPi = std::numbers::pi;

/// The three ambient geometries. S3 sits in R⁴ with the Euclidean form,
/// H3 is the upper sheet of ⟨x,x⟩ = 1 in Minkowski space with signature
/// (+,−,−,−), R3 occupies components 1..3 of the ambient vector.
enum class Space { R3, S3, H3 };

inline const char* to_string(Space s) {
    switch (s) {
        case Space::R3: return "r3";
        case Space::S3: return "s3";
        case Space::H3: return "h3";
    }
    return "?";
}

/// Thrown when an operation hits a geometric singularity (coincident points,
/// antipodal transport on S³, vanishing denominators).
struct singularity_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when an input violates a documented precondition.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Points on S³ are declared antipodal when 1 + ⟨x,y⟩ falls below this;
// the transport denominator is no longer trustworthy there.
inline constexpr double kAntipodalEps = 1e-9;

// arccos/arccosh arguments within this of the domain boundary are clamped.
inline constexpr double kClampEps = 1e-12;

/// Bilinear form of the ambient space: Euclidean on R⁴ for S3,
/// x₀y₀ − x₁y₁ − x₂y₂ − x₃y₃ for H3, Euclidean on components 1..3 for R3.
inline double inner(Space s, const Vec4& a, const Vec4& b) {
    switch (s) {
        case Space::S3: return dot4(a, b);
        case Space::H3: return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
        case Space::R3: return a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    }
    return 0.0;
}

/// Riemannian inner product of tangent vectors. On H³ the form is negated
/// so tangents (which are spacelike) get a positive definite product.
inline double metric_dot(Space s, const Vec4& v, const Vec4& w) {
    return s == Space::H3 ? -inner(s, v, w) : inner(s, v, w);
}

inline double metric_norm(Space s, const Vec4& v) {
    return std::sqrt(std::max(0.0, metric_dot(s, v, v)));
}

/// Residual of the point constraint: |⟨x,x⟩ − 1| on S³/H³ (plus the sheet
/// condition x₀ > 0 on H³), |x₀| on R³.
inline double point_residual(Space s, const Vec4& x) {
    switch (s) {
        case Space::R3: return std::abs(x[0]);
        case Space::S3: return std::abs(inner(s, x, x) - 1.0);
        case Space::H3: {
            double r = std::abs(inner(s, x, x) - 1.0);
            if (x[0] <= 0.0) r = std::max(r, 1.0 + std::abs(x[0]));  // wrong sheet
            return r;
        }
    }
    return 0.0;
}

inline bool is_point(Space s, const Vec4& x, double tol = 1e-10) {
    return point_residual(s, x) <= tol;
}

/// Residual of the tangency constraint ⟨x,v⟩ = 0 (|v₀| on R³).
inline double tangency_residual(Space s, const Vec4& x, const Vec4& v) {
    return s == Space::R3 ? std::abs(v[0]) : std::abs(inner(s, x, v));
}

/// Orthogonal projection of an ambient vector onto the tangent space at x:
/// w − ⟨x,w⟩x on S³/H³, drop component 0 on R³. Idempotent.
inline Vec4 project_to_tangent(Space s, const Vec4& x, const Vec4& w) {
    if (s == Space::R3) return {0.0, w[1], w[2], w[3]};
    return w - inner(s, x, w) * x;
}

/// Geodesic distance. arccos⟨x,y⟩ on S³ (argument clamped to [−1,1]),
/// arccosh⟨x,y⟩ on H³ (clamped to [1,∞)), |x−y| on R³.
inline double distance(Space s, const Vec4& x, const Vec4& y) {
    switch (s) {
        case Space::R3: return norm4(x - y);
        case Space::S3: {
            double c = dot4(x, y);
            if (c > 1.0) c = 1.0;
            if (c < -1.0) c = -1.0;
            return std::acos(c);
        }
        case Space::H3: {
            double c = inner(Space::H3, x, y);
            if (c < 1.0) c = 1.0;
            return std::acosh(c);
        }
    }
    return 0.0;
}

/// Gradient of the distance function α(x,·) at y: a unit tangent at y
/// pointing away from x. (cos α · y − x)/sin α on S³, (cosh α · y − x)/sinh α
/// on H³, (y − x)/|y − x| on R³. Undefined at coincident points and, on S³,
/// at antipodal ones.
inline Vec4 grad_distance_y(Space s, const Vec4& x, const Vec4& y) {
    switch (s) {
        case Space::R3: {
            double n = norm4(y - x);
            if (n < kClampEps) throw singularity_error("grad_distance_y: coincident points");
            return (y - x) / n;
        }
        case Space::S3: {
            double c = dot4(x, y);
            if (1.0 - c < kAntipodalEps)
                throw singularity_error("grad_distance_y: coincident points on S3");
            if (1.0 + c < kAntipodalEps)
                throw singularity_error("grad_distance_y: antipodal points on S3");
            double sa = std::sqrt(std::max(0.0, 1.0 - c * c));
            return (c * y - x) / sa;
        }
        case Space::H3: {
            double c = inner(Space::H3, x, y);
            if (c - 1.0 < kClampEps)
                throw singularity_error("grad_distance_y: coincident points on H3");
            double sa = std::sqrt(std::max(0.0, c * c - 1.0));
            return (c * y - x) / sa;
        }
    }
    return {};
}

/// Ambient vector triple product. ⟨[a,b,c], d⟩ = det(a,b,c,d) for the
/// space's bilinear form; alternating and multilinear in a, b, c. With the
/// Euclidean form [X₀,X₁,X₂] = X₃; the Minkowski form flips the sign of
/// the spatial components, so there [X₀,X₁,X₂] = −X₃.
inline Vec4 triple_product(Space s, const Vec4& a, const Vec4& b, const Vec4& c) {
    auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2,
                   double c0, double c1, double c2) {
        return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
               a2 * (b0 * c1 - b1 * c0);
    };
    // Euclidean components: cofactors of the bottom row of det(a,b,c,·).
    Vec4 e;
    e[0] = -det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
    e[1] = det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
    e[2] = -det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
    e[3] = det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
    if (s == Space::H3) return {e[0], -e[1], -e[2], -e[3]};
    return e;
}

/// Oriented cross product of tangent vectors at the point y. The sign is
/// fixed so that the transported frame satisfies (E₁ × E₂) • E₃ = +1 in
/// every space; equivalently (a × b) • c = det(y, a, b, c) on S³ and R³,
/// and +det(y, a, b, c) on H³ after accounting for the Minkowski metric.
inline Vec4 cross_at(Space s, const Vec4& y, const Vec4& a, const Vec4& b) {
    switch (s) {
        case Space::R3: return triple_product(Space::S3, kBasis0, a, b);
        case Space::S3: return triple_product(Space::S3, y, a, b);
        case Space::H3: return -triple_product(Space::H3, y, a, b);
    }
    return {};
}

}  // namespace curvelink
