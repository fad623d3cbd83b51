#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "curvelink/curves.hpp"
#include "curvelink/isometry.hpp"

namespace curvelink {

/// Circle of radius r in the plane spanned by (unit, orthogonal) e1, e2
/// around center, in R³ coordinates (component 0 stays zero).
inline Curve r3_circle(const Vec4& center, double r, const Vec4& e1, const Vec4& e2) {
    return Curve::analytic(
        Space::R3, 2.0 * kPi,
        [=](double s) { return center + r * std::cos(s) * e1 + r * std::sin(s) * e2; },
        [=](double s) { return -r * std::sin(s) * e1 + r * std::cos(s) * e2; });
}

/// The standard R³ Hopf-link pair: two unit circles in perpendicular planes,
/// each passing through the other's center. Linking number ±1.
inline std::pair<Curve, Curve> r3_hopf_pair() {
    Curve a = r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis2);
    Curve b = r3_circle({0, 1, 0, 0}, 1.0, kBasis1, kBasis3);
    return {a, b};
}

/// Core circle of radius big_r in the x₁x₂ plane together with a curve on
/// the torus of tube radius tube_r around it that winds `windings` times
/// around the tube while closing up once around the axis. The pair links
/// exactly `windings` times (0 gives a coplanar disjoint circle).
inline std::pair<Curve, Curve> r3_torus_pair(int windings, double big_r = 1.0,
                                             double tube_r = 0.35, double phase = 0.0) {
    Curve core = r3_circle({0, 0, 0, 0}, big_r, kBasis1, kBasis2);
    int q = windings;
    Curve tube = Curve::analytic(
        Space::R3, 2.0 * kPi,
        [=](double s) {
            double rho = big_r + tube_r * std::cos(q * s + phase);
            return Vec4{0.0, rho * std::cos(s), rho * std::sin(s),
                        tube_r * std::sin(q * s + phase)};
        },
        [=](double s) {
            double rho = big_r + tube_r * std::cos(q * s + phase);
            double drho = -tube_r * q * std::sin(q * s + phase);
            return Vec4{0.0, drho * std::cos(s) - rho * std::sin(s),
                        drho * std::sin(s) + rho * std::cos(s),
                        tube_r * q * std::cos(q * s + phase)};
        });
    return {core, tube};
}

/// Smooth closed curve with random low-order trigonometric coefficients.
/// Bounded by ~1.5 in radius; smoothness is spectral by construction.
inline Curve r3_random_trig_curve(std::uint64_t seed, int max_harmonic = 3) {
    Rng rng(seed * 0x2545f4914f6cdd1dULL + 11ULL);
    struct Term {
        int m;
        Vec4 a, b;
    };
    std::vector<Term> terms;
    for (int m = 1; m <= max_harmonic; ++m) {
        double amp = 1.0 / (1.0 + m * m);
        Vec4 a{0, amp * rng.normal(), amp * rng.normal(), amp * rng.normal()};
        Vec4 b{0, amp * rng.normal(), amp * rng.normal(), amp * rng.normal()};
        terms.push_back({m, a, b});
    }
    return Curve::analytic(
        Space::R3, 2.0 * kPi,
        [terms](double s) {
            Vec4 p{0, 0, 0, 0};
            for (const auto& t : terms)
                p += std::cos(t.m * s) * t.a + std::sin(t.m * s) * t.b;
            return p;
        },
        [terms](double s) {
            Vec4 v{0, 0, 0, 0};
            for (const auto& t : terms)
                v += -t.m * std::sin(t.m * s) * t.a + t.m * std::cos(t.m * s) * t.b;
            return v;
        });
}

/// The two orthogonal great circles (cos s, sin s, 0, 0) and
/// (0, 0, cos t, sin t) on S³; every point of one is at distance π/2 from
/// every point of the other, and they link once.
inline std::pair<Curve, Curve> s3_hopf_pair() {
    return {great_circle(kBasis0, kBasis1), great_circle(kBasis2, kBasis3)};
}

/// Seeded disjoint curve pair with |Lk| = `windings`, embedded into the
/// requested space (or left in R³). A seeded isometry of the target space
/// is applied on top so repeated draws probe different placements.
inline std::pair<Curve, Curve> embedded_torus_pair(Space space, int windings,
                                                   std::uint64_t seed) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 3ULL);
    double big_r = 0.9 + 0.3 * rng.uniform();
    double tube_r = 0.25 + 0.15 * rng.uniform();
    double phase = 2.0 * kPi * rng.uniform();
    auto [core, tube] = r3_torus_pair(windings, big_r, tube_r, phase);
    if (space == Space::R3) {
        Isometry iso = random_isometry(Space::R3, seed);
        return {core.transformed(iso), tube.transformed(iso)};
    }
    double scale = (space == Space::S3) ? 0.9 / (big_r + tube_r + 0.4) : 0.6;
    Curve a = embed_r3_curve(space, core, scale);
    Curve b = embed_r3_curve(space, tube, scale);
    Isometry iso = random_isometry(space, seed);
    return {a.transformed(iso), b.transformed(iso)};
}

}  // namespace curvelink
