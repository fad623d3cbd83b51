#pragma once

#include "curvelink/space.hpp"
#include "curvelink/vec4.hpp"

namespace curvelink {

// Quaternions are stored as (x₀, x₁, x₂, x₃) ↔ x₀ + x₁i + x₂j + x₃k with
// ij = k, jk = i, ki = j, so points of S³ double as unit quaternions.

inline Vec4 quat_mul(const Vec4& a, const Vec4& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Vec4 quat_conj(const Vec4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

/// Inverse of a unit quaternion (its conjugate).
inline Vec4 quat_inv_unit(const Vec4& a) { return quat_conj(a); }

/// Differential of left translation by y·x⁻¹: carries a tangent vector v
/// from x to y by quaternion multiplication, v ↦ (y·x⁻¹)·v. Defined for
/// every pair of points on S³, antipodes included; preserves the Euclidean
/// norm. For fixed x and v, y ↦ quat_left_translate(x, y, v) is the
/// left-invariant field through (x, v).
inline Vec4 quat_left_translate(const Vec4& x, const Vec4& y, const Vec4& v) {
    return quat_mul(quat_mul(y, quat_inv_unit(x)), v);
}

/// The left-invariant fields with value i, j, k at the identity:
/// V₁(x) = x·i, V₂(x) = x·j, V₃(x) = x·k.
inline Vec4 left_invariant_field(int axis, const Vec4& x) {
    Vec4 e;
    e[axis] = 1.0;
    return quat_mul(x, e);
}

/// Right-invariant counterparts: W₁(x) = i·x etc.
inline Vec4 right_invariant_field(int axis, const Vec4& x) {
    Vec4 e;
    e[axis] = 1.0;
    return quat_mul(e, x);
}

}  // namespace curvelink
