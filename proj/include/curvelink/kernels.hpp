#pragma once

#include <cmath>
#include <functional>

#include "curvelink/quadrature.hpp"
#include "curvelink/space.hpp"

namespace curvelink {

/// Every radial kernel used by the linking integrals and the field
/// operators, keyed by space and by format (LT = left translation,
/// PT = parallel transport) where the same symbol is reused.
///
///   R3_PHI0    −1/(4πα)                        Δφ = δ
///   S3_PHI0    (−1/4π²)(π−α)cot α              Δφ = δ − 1/2π²
///   S3_PT_PHI1 (−1/4π²)(π−α)csc α              Δφ − φ = δ
///   S3_LT_PHI1 (−1/16π²)α(2π−α)                Δφ = φ₀ − [φ₀]
///   S3_LT_PHI2 (−1/192π²)(3α(2π−α) + 2α(π−α)(2π−α)cot α)   Δφ = φ₁ − [φ₁]
///   S3_PT_PHI2 φ₁ + (1/8π²)(π−α)²/(1+cos α)
///   S3_PT_PSI  (−1/4π²)(π−α)²/(1+cos α)
///   S3_PT_PHI3 (−1/24)(π−α)cot α − (1/16π²)α(2π−α) + (1/8π²)Ω(α)
///   H3_PHI0    (−1/4π)(coth α − 1)             Δφ = δ
///   H3_PHI1    (−1/4π)csch α                   Δφ + φ = δ
///   H3_PHI2    φ₁ + (1/4π)α/(1+cosh α)
///   H3_PSI     (−1/2π)α/(1+cosh α)
///   H3_PHI3    (1/4π)α/(e^{2α}−1) + (1/4π)∫₀^α(t/sinh t − t²/2sinh²t)dt
///
/// Ω(α) = ∫_α^π ((π−t)³/(3sin²t) + (π−t)²/sin t) dt; both integral terms
/// are evaluated by adaptive quadrature (relative tolerance 1e−10), while
/// their α-derivatives are closed forms via the fundamental theorem of
/// calculus, so gradients and Laplacians never need quadrature.
enum class KernelId {
    R3_PHI0,
    S3_PHI0,
    S3_PT_PHI1,
    S3_LT_PHI1,
    S3_LT_PHI2,
    S3_PT_PHI2,
    S3_PT_PSI,
    S3_PT_PHI3,
    H3_PHI0,
    H3_PHI1,
    H3_PHI2,
    H3_PSI,
    H3_PHI3,
};

inline Space kernel_space(KernelId id) {
    switch (id) {
        case KernelId::R3_PHI0: return Space::R3;
        case KernelId::H3_PHI0:
        case KernelId::H3_PHI1:
        case KernelId::H3_PHI2:
        case KernelId::H3_PSI:
        case KernelId::H3_PHI3: return Space::H3;
        default: return Space::S3;
    }
}

inline const char* to_string(KernelId id) {
    switch (id) {
        case KernelId::R3_PHI0: return "r3_phi0";
        case KernelId::S3_PHI0: return "s3_phi0";
        case KernelId::S3_PT_PHI1: return "s3_pt_phi1";
        case KernelId::S3_LT_PHI1: return "s3_lt_phi1";
        case KernelId::S3_LT_PHI2: return "s3_lt_phi2";
        case KernelId::S3_PT_PHI2: return "s3_pt_phi2";
        case KernelId::S3_PT_PSI: return "s3_pt_psi";
        case KernelId::S3_PT_PHI3: return "s3_pt_phi3";
        case KernelId::H3_PHI0: return "h3_phi0";
        case KernelId::H3_PHI1: return "h3_phi1";
        case KernelId::H3_PHI2: return "h3_phi2";
        case KernelId::H3_PSI: return "h3_psi";
        case KernelId::H3_PHI3: return "h3_phi3";
    }
    return "?";
}

namespace detail {

inline constexpr double kInv4Pi2 = 1.0 / (4.0 * kPi * kPi);   // 1/4π²
inline constexpr double kInv16Pi2 = 1.0 / (16.0 * kPi * kPi);
inline constexpr double kInv192Pi2 = 1.0 / (192.0 * kPi * kPi);
inline constexpr double kInv8Pi2 = 1.0 / (8.0 * kPi * kPi);
inline constexpr double kInv4Pi = 1.0 / (4.0 * kPi);

// --- S³ closed forms. u = π − α throughout; values near α = π use the
// u → 0 limits to dodge the 0·∞ forms.

inline double s3_phi0(double a) {
    double u = kPi - a;
    if (u < 1e-8) return kInv4Pi2;  // (π−α)cot α → −1
    return -kInv4Pi2 * u * std::cos(a) / std::sin(a);
}
inline double s3_phi0_d1(double a) {
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s);
    return kInv4Pi2 * (ct + (kPi - a) * cs2);
}
inline double s3_phi0_d2(double a) {
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s);
    return -2.0 * kInv4Pi2 * cs2 * (1.0 + (kPi - a) * ct);
}

inline double s3_pt_phi1(double a) {
    double u = kPi - a;
    if (u < 1e-8) return -kInv4Pi2;  // (π−α)csc α → 1
    return -kInv4Pi2 * u / std::sin(a);
}
inline double s3_pt_phi1_d1(double a) {
    double s = std::sin(a), cs = 1.0 / s, ct = std::cos(a) / s;
    return kInv4Pi2 * cs * (1.0 + (kPi - a) * ct);
}
inline double s3_pt_phi1_d2(double a) {
    double s = std::sin(a), cs = 1.0 / s, ct = std::cos(a) / s, cs2 = cs * cs;
    double u = kPi - a;
    return -kInv4Pi2 * cs * (2.0 * ct + u * (ct * ct + cs2));
}

inline double s3_lt_phi1(double a) { return -kInv16Pi2 * a * (2.0 * kPi - a); }
inline double s3_lt_phi1_d1(double a) { return -2.0 * kInv16Pi2 * (kPi - a); }
inline double s3_lt_phi1_d2(double) { return 2.0 * kInv16Pi2; }

inline double s3_lt_phi2(double a) {
    double u = kPi - a, A = a * (2.0 * kPi - a);
    double second;
    if (u < 1e-8) {
        second = -2.0 * a * (2.0 * kPi - a);  // u cot α → −1
    } else {
        second = 2.0 * A * u * std::cos(a) / std::sin(a);
    }
    return -kInv192Pi2 * (3.0 * A + second);
}
inline double s3_lt_phi2_d1(double a) {
    double u = kPi - a, A = a * (2.0 * kPi - a), P = A * u;
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s);
    double pd = 2.0 * u * u - A;
    return -kInv192Pi2 * (6.0 * u + 2.0 * (pd * ct - P * cs2));
}
inline double s3_lt_phi2_d2(double a) {
    double u = kPi - a, A = a * (2.0 * kPi - a), P = A * u;
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s);
    double pd = 2.0 * u * u - A, pdd = -6.0 * u;
    return -kInv192Pi2 *
           (-6.0 + 2.0 * (pdd * ct - 2.0 * pd * cs2 + 2.0 * P * cs2 * ct));
}

// W = (π−α)²/(1+cos α); shared by S3_PT_PHI2 and S3_PT_PSI.
inline double s3_w(double a) {
    double u = kPi - a;
    if (u < 1e-8) return 2.0 + u * u / 6.0;
    return u * u / (1.0 + std::cos(a));
}
inline double s3_w_d1(double a) {
    double u = kPi - a, s = std::sin(a), d = 1.0 + std::cos(a);
    return -2.0 * u / d + u * u * s / (d * d);
}
inline double s3_w_d2(double a) {
    double u = kPi - a, s = std::sin(a), co = std::cos(a), d = 1.0 + co;
    return 2.0 / d - 4.0 * u * s / (d * d) + u * u * co / (d * d) +
           2.0 * u * u * s * s / (d * d * d);
}

inline double s3_pt_phi2(double a) { return s3_pt_phi1(a) + kInv8Pi2 * s3_w(a); }
inline double s3_pt_phi2_d1(double a) { return s3_pt_phi1_d1(a) + kInv8Pi2 * s3_w_d1(a); }
inline double s3_pt_phi2_d2(double a) { return s3_pt_phi1_d2(a) + kInv8Pi2 * s3_w_d2(a); }

inline double s3_pt_psi(double a) { return -kInv4Pi2 * s3_w(a); }
inline double s3_pt_psi_d1(double a) { return -kInv4Pi2 * s3_w_d1(a); }
inline double s3_pt_psi_d2(double a) { return -kInv4Pi2 * s3_w_d2(a); }

// ω = −(π−α)³/(3sin²α) − (π−α)²/sin α; Ω(α) = −∫_α^π ω = ∫₀^{π−α} g(t) dt
// with g(t) = t³/(3sin²t) + t²/sin t  (sin(π−t) = sin t).
inline double s3_omega_integrand(double t) {
    if (t < 1e-6) return (4.0 / 3.0) * t;
    double s = std::sin(t);
    return t * t * t / (3.0 * s * s) + t * t / s;
}
inline double s3_omega(double a) {
    double upper = kPi - a;
    if (upper <= 0.0) return 0.0;
    return integrate([](double t) { return s3_omega_integrand(t); }, 0.0, upper, 1e-11)
        .value;
}
inline double s3_omega_d1(double a) {  // = ω(α)
    double u = kPi - a, s = std::sin(a);
    return -u * u * u / (3.0 * s * s) - u * u / s;
}
inline double s3_omega_d2(double a) {  // = ω′(α)
    double u = kPi - a, s = std::sin(a), co = std::cos(a);
    return u * u / (s * s) + 2.0 * u * u * u * co / (3.0 * s * s * s) + 2.0 * u / s +
           u * u * co / (s * s);
}

inline double s3_pt_phi3(double a) {
    double u = kPi - a;
    double uct = (u < 1e-8) ? -1.0 : u * std::cos(a) / std::sin(a);
    return (-1.0 / 24.0) * uct - kInv16Pi2 * a * (2.0 * kPi - a) + kInv8Pi2 * s3_omega(a);
}
inline double s3_pt_phi3_d1(double a) {
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s), u = kPi - a;
    return (-1.0 / 24.0) * (-ct - u * cs2) - kInv16Pi2 * 2.0 * u +
           kInv8Pi2 * s3_omega_d1(a);
}
inline double s3_pt_phi3_d2(double a) {
    double s = std::sin(a), ct = std::cos(a) / s, cs2 = 1.0 / (s * s), u = kPi - a;
    return (-1.0 / 24.0) * (2.0 * cs2 * (1.0 + u * ct)) + 2.0 * kInv16Pi2 +
           kInv8Pi2 * s3_omega_d2(a);
}

// --- H³ closed forms, written with t = e^{−α} so large distances stay finite.

inline double h3_phi0(double a) { return -2.0 * kInv4Pi / std::expm1(2.0 * a); }
inline double h3_phi0_d1(double a) {
    double sh = std::sinh(a);
    return kInv4Pi / (sh * sh);
}
inline double h3_phi0_d2(double a) {
    double sh = std::sinh(a);
    return -2.0 * kInv4Pi * std::cosh(a) / (sh * sh * sh);
}

inline double h3_phi1(double a) { return -kInv4Pi / std::sinh(a); }
inline double h3_phi1_d1(double a) {
    double sh = std::sinh(a);
    return kInv4Pi * std::cosh(a) / (sh * sh);
}
inline double h3_phi1_d2(double a) {
    double sh = std::sinh(a), ch = std::cosh(a);
    return -kInv4Pi * (ch * ch / (sh * sh * sh) + 1.0 / (sh * sh * sh));
}

// Wh = α/(1+cosh α); shared by H3_PHI2 and H3_PSI.
inline double h3_wh(double a) { return a / (1.0 + std::cosh(a)); }
inline double h3_wh_d1(double a) {
    double d = 1.0 + std::cosh(a);
    return 1.0 / d - a * std::sinh(a) / (d * d);
}
inline double h3_wh_d2(double a) {
    double sh = std::sinh(a), ch = std::cosh(a), d = 1.0 + ch;
    return -(2.0 * sh + a * ch) / (d * d) + 2.0 * a * sh * sh / (d * d * d);
}

inline double h3_phi2(double a) { return h3_phi1(a) + kInv4Pi * h3_wh(a); }
inline double h3_phi2_d1(double a) { return h3_phi1_d1(a) + kInv4Pi * h3_wh_d1(a); }
inline double h3_phi2_d2(double a) { return h3_phi1_d2(a) + kInv4Pi * h3_wh_d2(a); }

inline double h3_psi(double a) { return -2.0 * kInv4Pi * h3_wh(a); }
inline double h3_psi_d1(double a) { return -2.0 * kInv4Pi * h3_wh_d1(a); }
inline double h3_psi_d2(double a) { return -2.0 * kInv4Pi * h3_wh_d2(a); }

// Q(α) = α/(e^{2α}−1); J(α) = α/sinh α − α²/(2 sinh²α) is the integrand of
// the non-elementary part of H3_PHI3.
inline double h3_q(double a) { return a / std::expm1(2.0 * a); }
inline double h3_q_d1(double a) {
    double t = std::exp(-2.0 * a), d = 1.0 - t;
    return t / d - 2.0 * a * t / (d * d);
}
inline double h3_q_d2(double a) {
    double t = std::exp(-2.0 * a), d = 1.0 - t;
    return -4.0 * t / (d * d) - 4.0 * a * t / (d * d) + 8.0 * a * t / (d * d * d);
}
inline double h3_j(double t) {
    if (t < 1e-6) return 0.5;
    double sh = std::sinh(t);
    return t / sh - t * t / (2.0 * sh * sh);
}
inline double h3_j_d1(double a) {
    double sh = std::sinh(a), ch = std::cosh(a);
    return 1.0 / sh - a * ch / (sh * sh) - a / (sh * sh) + a * a * ch / (sh * sh * sh);
}
inline double h3_i(double a) {
    return integrate([](double t) { return h3_j(t); }, 0.0, a, 1e-11).value;
}

inline double h3_phi3(double a) { return kInv4Pi * (h3_q(a) + h3_i(a)); }
inline double h3_phi3_d1(double a) { return kInv4Pi * (h3_q_d1(a) + h3_j(a)); }
inline double h3_phi3_d2(double a) { return kInv4Pi * (h3_q_d2(a) + h3_j_d1(a)); }

inline double r3_phi0(double a) { return -kInv4Pi / a; }
inline double r3_phi0_d1(double a) { return kInv4Pi / (a * a); }
inline double r3_phi0_d2(double a) { return -2.0 * kInv4Pi / (a * a * a); }

}  // namespace detail

inline void check_kernel_domain(KernelId id, double a) {
    if (!(a > 1e-12)) throw precondition_error("kernel: distance below singularity guard");
    if (kernel_space(id) == Space::S3 && a > kPi)
        throw precondition_error("kernel: distance beyond pi on S3");
}

/// Kernel value at geodesic distance α (strictly inside the domain).
inline double kernel_eval(KernelId id, double a) {
    check_kernel_domain(id, a);
    using namespace detail;
    switch (id) {
        case KernelId::R3_PHI0: return r3_phi0(a);
        case KernelId::S3_PHI0: return s3_phi0(a);
        case KernelId::S3_PT_PHI1: return s3_pt_phi1(a);
        case KernelId::S3_LT_PHI1: return s3_lt_phi1(a);
        case KernelId::S3_LT_PHI2: return s3_lt_phi2(a);
        case KernelId::S3_PT_PHI2: return s3_pt_phi2(a);
        case KernelId::S3_PT_PSI: return s3_pt_psi(a);
        case KernelId::S3_PT_PHI3: return s3_pt_phi3(a);
        case KernelId::H3_PHI0: return h3_phi0(a);
        case KernelId::H3_PHI1: return h3_phi1(a);
        case KernelId::H3_PHI2: return h3_phi2(a);
        case KernelId::H3_PSI: return h3_psi(a);
        case KernelId::H3_PHI3: return h3_phi3(a);
    }
    return 0.0;
}

/// Analytic dφ/dα.
inline double kernel_deriv(KernelId id, double a) {
    check_kernel_domain(id, a);
    using namespace detail;
    switch (id) {
        case KernelId::R3_PHI0: return r3_phi0_d1(a);
        case KernelId::S3_PHI0: return s3_phi0_d1(a);
        case KernelId::S3_PT_PHI1: return s3_pt_phi1_d1(a);
        case KernelId::S3_LT_PHI1: return s3_lt_phi1_d1(a);
        case KernelId::S3_LT_PHI2: return s3_lt_phi2_d1(a);
        case KernelId::S3_PT_PHI2: return s3_pt_phi2_d1(a);
        case KernelId::S3_PT_PSI: return s3_pt_psi_d1(a);
        case KernelId::S3_PT_PHI3: return s3_pt_phi3_d1(a);
        case KernelId::H3_PHI0: return h3_phi0_d1(a);
        case KernelId::H3_PHI1: return h3_phi1_d1(a);
        case KernelId::H3_PHI2: return h3_phi2_d1(a);
        case KernelId::H3_PSI: return h3_psi_d1(a);
        case KernelId::H3_PHI3: return h3_phi3_d1(a);
    }
    return 0.0;
}

/// Analytic d²φ/dα².
inline double kernel_deriv2(KernelId id, double a) {
    check_kernel_domain(id, a);
    using namespace detail;
    switch (id) {
        case KernelId::R3_PHI0: return r3_phi0_d2(a);
        case KernelId::S3_PHI0: return s3_phi0_d2(a);
        case KernelId::S3_PT_PHI1: return s3_pt_phi1_d2(a);
        case KernelId::S3_LT_PHI1: return s3_lt_phi1_d2(a);
        case KernelId::S3_LT_PHI2: return s3_lt_phi2_d2(a);
        case KernelId::S3_PT_PHI2: return s3_pt_phi2_d2(a);
        case KernelId::S3_PT_PSI: return s3_pt_psi_d2(a);
        case KernelId::S3_PT_PHI3: return s3_pt_phi3_d2(a);
        case KernelId::H3_PHI0: return h3_phi0_d2(a);
        case KernelId::H3_PHI1: return h3_phi1_d2(a);
        case KernelId::H3_PHI2: return h3_phi2_d2(a);
        case KernelId::H3_PSI: return h3_psi_d2(a);
        case KernelId::H3_PHI3: return h3_phi3_d2(a);
    }
    return 0.0;
}

/// A radial function of geodesic distance with first and second derivative,
/// the common currency of the Laplacian and Key-Lemma machinery.
struct RadialFn {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

inline RadialFn radial_fn(KernelId id) {
    return {[id](double a) { return kernel_eval(id, a); },
            [id](double a) { return kernel_deriv(id, a); },
            [id](double a) { return kernel_deriv2(id, a); }};
}

/// Wraps an arbitrary scalar function of α with 5-point central-difference
/// derivatives (default step 1e−4).
inline RadialFn radial_fn_numeric(std::function<double(double)> f, double h = 1e-4) {
    auto d1 = [f, h](double a) {
        return (-f(a + 2 * h) + 8 * f(a + h) - 8 * f(a - h) + f(a - 2 * h)) / (12 * h);
    };
    auto d2 = [f, h](double a) {
        return (-f(a + 2 * h) + 16 * f(a + h) - 30 * f(a) + 16 * f(a - h) -
                f(a - 2 * h)) /
               (12 * h * h);
    };
    return {std::move(f), std::move(d1), std::move(d2)};
}

/// Coefficient of f′ in the radial Laplacian: 2cot α on S³, 2/α in R³,
/// 2coth α on H³.
inline double radial_laplacian_drift(Space s, double a) {
    switch (s) {
        case Space::R3: return 2.0 / a;
        case Space::S3: return 2.0 * std::cos(a) / std::sin(a);
        case Space::H3: return 2.0 * std::cosh(a) / std::sinh(a);
    }
    return 0.0;
}

/// Laplacian of a radial function: Δf = f″ + drift(α)·f′.
inline double radial_laplacian(Space s, const RadialFn& f, double a) {
    return f.d2(a) + radial_laplacian_drift(s, a) * f.d1(a);
}

inline double radial_laplacian(Space s, KernelId id, double a) {
    if (kernel_space(id) != s)
        throw precondition_error("radial_laplacian: kernel belongs to another space");
    return kernel_deriv2(id, a) + radial_laplacian_drift(s, a) * kernel_deriv(id, a);
}

template <typename F>
    requires std::is_invocable_r_v<double, F, double>
double radial_laplacian(Space s, F&& f, double a, double h = 1e-4) {
    RadialFn rf = radial_fn_numeric(std::function<double(double)>(std::forward<F>(f)), h);
    return radial_laplacian(s, rf, a);
}

/// Average of a radial function over S³ (volume 2π²):
/// [f] = (1/2π²) ∫₀^π f(α) · 4π sin²α dα, adaptive to 1e−10 relative.
template <typename F>
double s3_average(F&& f, double rel_tol = 1e-10) {
    auto integrand = [&f](double a) {
        double s = std::sin(a);
        return f(a) * s * s;
    };
    QuadResult q = integrate(integrand, 0.0, kPi, rel_tol);
    if (!q.converged) throw std::runtime_error("s3_average: quadrature did not converge");
    return q.value * (2.0 / kPi);
}

inline double s3_average(KernelId id, double rel_tol = 1e-10) {
    if (kernel_space(id) != Space::S3)
        throw precondition_error("s3_average: kernel not on S3");
    return s3_average([id](double a) { return kernel_eval(id, a); }, rel_tol);
}

/// The Laplacian-chain identities, each pairing a kernel with its claimed
/// Laplacian image. Residuals are checked pointwise away from α = 0.
enum class ChainId {
    S3_LT_CHAIN,   // Δφ₂ = φ₁ − [φ₁] and Δφ₁ = φ₀ − [φ₀]   (LT kernels)
    S3_PHI0_LAW,   // Δφ₀ = −1/2π² away from 0
    S3_SHIFT_LAW,  // Δφ − φ = 0 away from 0   (PT φ₁)
    H3_SHIFT_LAW,  // Δφ + φ = 0 away from 0   (H³ φ₁)
    S3_PHI3_LAW,   // Δφ₃ = φ₀ − φ₂ − ψ + C, C fixed by zero average
    H3_PHI3_LAW,   // Δφ₃ = φ₀ − φ₂ − ψ
};

inline const char* to_string(ChainId id) {
    switch (id) {
        case ChainId::S3_LT_CHAIN: return "s3_lt_chain";
        case ChainId::S3_PHI0_LAW: return "s3_phi0_law";
        case ChainId::S3_SHIFT_LAW: return "s3_shift_law";
        case ChainId::H3_SHIFT_LAW: return "h3_shift_law";
        case ChainId::S3_PHI3_LAW: return "s3_phi3_law";
        case ChainId::H3_PHI3_LAW: return "h3_phi3_law";
    }
    return "?";
}

inline Space chain_space(ChainId id) {
    return (id == ChainId::H3_SHIFT_LAW || id == ChainId::H3_PHI3_LAW) ? Space::H3
                                                                       : Space::S3;
}

namespace detail {

inline double avg_s3_phi0() {
    static const double v = s3_average(KernelId::S3_PHI0);
    return v;
}
inline double avg_s3_lt_phi1() {
    static const double v = s3_average(KernelId::S3_LT_PHI1);
    return v;
}
// C making φ₀ − φ₂ − ψ + C average to zero over S³; comes out to
// 1/8π² − 1/12 ≈ −0.0706682.
inline double s3_phi3_constant() {
    static const double v = -s3_average([](double a) {
        return kernel_eval(KernelId::S3_PHI0, a) - kernel_eval(KernelId::S3_PT_PHI2, a) -
               kernel_eval(KernelId::S3_PT_PSI, a);
    });
    return v;
}

}  // namespace detail

/// Pointwise residual Δ(kernel)(α) − (claimed image)(α) with analytic
/// derivatives. For the two-step chain the larger of the two link residuals
/// is returned.
inline double chain_residual(ChainId id, double a) {
    if (!(a >= 0.05)) throw precondition_error("chain_residual: alpha too close to 0");
    switch (id) {
        case ChainId::S3_LT_CHAIN: {
            double r2 = radial_laplacian(Space::S3, KernelId::S3_LT_PHI2, a) -
                        (kernel_eval(KernelId::S3_LT_PHI1, a) - detail::avg_s3_lt_phi1());
            double r1 = radial_laplacian(Space::S3, KernelId::S3_LT_PHI1, a) -
                        (kernel_eval(KernelId::S3_PHI0, a) - detail::avg_s3_phi0());
            return std::max(std::abs(r2), std::abs(r1));
        }
        case ChainId::S3_PHI0_LAW:
            return radial_laplacian(Space::S3, KernelId::S3_PHI0, a) +
                   1.0 / (2.0 * kPi * kPi);
        case ChainId::S3_SHIFT_LAW:
            return radial_laplacian(Space::S3, KernelId::S3_PT_PHI1, a) -
                   kernel_eval(KernelId::S3_PT_PHI1, a);
        case ChainId::H3_SHIFT_LAW:
            return radial_laplacian(Space::H3, KernelId::H3_PHI1, a) +
                   kernel_eval(KernelId::H3_PHI1, a);
        case ChainId::S3_PHI3_LAW:
            return radial_laplacian(Space::S3, KernelId::S3_PT_PHI3, a) -
                   (kernel_eval(KernelId::S3_PHI0, a) -
                    kernel_eval(KernelId::S3_PT_PHI2, a) -
                    kernel_eval(KernelId::S3_PT_PSI, a) + detail::s3_phi3_constant());
        case ChainId::H3_PHI3_LAW:
            return radial_laplacian(Space::H3, KernelId::H3_PHI3, a) -
                   (kernel_eval(KernelId::H3_PHI0, a) - kernel_eval(KernelId::H3_PHI2, a) -
                    kernel_eval(KernelId::H3_PSI, a));
    }
    return 0.0;
}

/// φ′(α)·∇_yα at y. On S³, every stored kernel has φ′·∇α → 0 at the
/// antipode (the distance is maximal there), so the zero tangent is
/// returned once 1 + ⟨x,y⟩ drops below the antipodal threshold.
inline Vec4 kernel_grad_y(KernelId id, Space s, const Vec4& x, const Vec4& y) {
    if (kernel_space(id) != s)
        throw precondition_error("kernel_grad_y: kernel belongs to another space");
    if (s == Space::S3 && 1.0 + dot4(x, y) < kAntipodalEps) return {};
    double a = distance(s, x, y);
    return kernel_deriv(id, a) * grad_distance_y(s, x, y);
}

}  // namespace curvelink
