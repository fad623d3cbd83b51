#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "curvelink/frame.hpp"
#include "curvelink/space.hpp"
#include "curvelink/vec4.hpp"

namespace curvelink {

/// Deterministic random source. Gaussians come from Box–Muller over raw
/// uniform bits so streams are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    Vec4 gaussian_vec4() { return {normal(), normal(), normal(), normal()}; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Orientation-preserving isometry of one of the three spaces. The linear
/// part preserves the ambient bilinear form (MᵀGM = G, det M = +1, and
/// M₀₀ > 0 on H³ so the upper sheet is preserved); the translation part is
/// used only on R³.
struct Isometry {
    Space space = Space::S3;
    Mat4 m = Mat4::identity();
    Vec4 translation{};  // R³ only

    Vec4 apply_point(const Vec4& p) const { return m * p + translation; }
    Vec4 apply_tangent(const Vec4& v) const { return m * v; }

    /// Max-abs entry of MᵀGM − G, the form-preservation residual.
    double form_residual() const {
        Mat4 g;
        switch (space) {
            case Space::S3: g = Mat4::identity(); break;
            case Space::H3:
                g = Mat4::identity();
                g(1, 1) = g(2, 2) = g(3, 3) = -1.0;
                break;
            case Space::R3:
                g(1, 1) = g(2, 2) = g(3, 3) = 1.0;
                break;
        }
        Mat4 r = m.transposed() * g * m;
        double res = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) res = std::max(res, std::abs(r(i, j) - g(i, j)));
        return res;
    }
};

namespace detail {

/// Gram–Schmidt the rows of a against the Euclidean form; rows must start
/// independent enough. Fixes det = +1 by flipping the last row if needed.
inline Mat4 orthonormalize_so4(Mat4 a) {
    for (int i = 0; i < 4; ++i) {
        Vec4 r = a.row(i);
        for (int j = 0; j < i; ++j) r -= dot4(r, a.row(j)) * a.row(j);
        a.set_row(i, r / norm4(r));
    }
    if (det4(a) < 0.0) a.set_row(3, -a.row(3));
    return a;
}

/// Rotation fixing the x₀ axis, acting as the given SO(3) block.
inline Mat4 spatial_rotation(Rng& rng) {
    Mat4 a = Mat4::identity();
    // random 3×3 Gaussian block, orthonormalized
    double b[3][3];
    for (auto& row : b)
        for (double& v : row) v = rng.normal();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < i; ++j) {
            double d = b[i][0] * b[j][0] + b[i][1] * b[j][1] + b[i][2] * b[j][2];
            for (int k = 0; k < 3; ++k) b[i][k] -= d * b[j][k];
        }
        double n = std::sqrt(b[i][0] * b[i][0] + b[i][1] * b[i][1] + b[i][2] * b[i][2]);
        for (int k = 0; k < 3; ++k) b[i][k] /= n;
    }
    double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                 b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                 b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    if (det < 0.0)
        for (int k = 0; k < 3; ++k) b[2][k] = -b[2][k];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i + 1, j + 1) = b[i][j];
    return a;
}

/// Boost of rapidity t in the x₀x₁ plane (preserves the Minkowski form).
inline Mat4 boost_x1(double t) {
    Mat4 a = Mat4::identity();
    a(0, 0) = std::cosh(t);
    a(0, 1) = std::sinh(t);
    a(1, 0) = std::sinh(t);
    a(1, 1) = std::cosh(t);
    return a;
}

}  // namespace detail

/// Seeded orientation-preserving isometry. S³: orthonormalized Gaussian
/// 4×4 with determinant fix. H³: rotation · boost · rotation. R³: spatial
/// rotation plus a translation of norm ≤ 1.
inline Isometry random_isometry(Space s, std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1ULL);
    Isometry iso;
    iso.space = s;
    switch (s) {
        case Space::S3: {
            Mat4 a;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) a(i, j) = rng.normal();
            iso.m = detail::orthonormalize_so4(a);
            break;
        }
        case Space::H3: {
            Mat4 r1 = detail::spatial_rotation(rng);
            Mat4 b = detail::boost_x1(rng.uniform(-1.5, 1.5));
            Mat4 r2 = detail::spatial_rotation(rng);
            iso.m = r1 * b * r2;
            break;
        }
        case Space::R3: {
            iso.m = detail::spatial_rotation(rng);
            iso.translation = {0.0, rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                               rng.uniform(-1.0, 1.0)};
            break;
        }
    }
    return iso;
}

/// SO(4) rotation carrying the unit vector p to target (both unit, Euclidean).
/// Used to recenter S³ grids and to normalize stereographic poles.
inline Mat4 rotation_taking(const Vec4& p, const Vec4& target) {
    // Build an orthonormal basis with first vector p, another with first
    // vector target; the product of the two frames maps p to target.
    auto frame_from = [](const Vec4& first) {
        Mat4 a;
        a.set_row(0, first);
        const Vec4 axes[4] = {kBasis0, kBasis1, kBasis2, kBasis3};
        int row = 1;
        for (int k = 0; k < 4 && row < 4; ++k) {
            Vec4 w = axes[k];
            for (int j = 0; j < row; ++j) w -= dot4(w, a.row(j)) * a.row(j);
            double n = norm4(w);
            if (n > 0.1) a.set_row(row++, w / n);
        }
        return a;
    };
    Mat4 fp = frame_from(p / norm4(p));
    Mat4 ft = frame_from(target / norm4(target));
    Mat4 m = ft.transposed() * fp;  // m p = target
    if (det4(m) < 0.0) {
        // flip one of the auxiliary rows of fp to restore orientation
        fp.set_row(3, -fp.row(3));
        m = ft.transposed() * fp;
    }
    return m;
}

}  // namespace curvelink
