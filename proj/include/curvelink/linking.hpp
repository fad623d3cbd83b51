#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "curvelink/curves.hpp"
#include "curvelink/frame.hpp"
#include "curvelink/quadrature.hpp"
#include "curvelink/quaternion.hpp"
#include "curvelink/space.hpp"

namespace curvelink {

/// The four linking integrals: the classical Gauss integral in R³, the
/// two-term left-translation form and the single-term parallel-transport
/// form on S³, and the parallel-transport form on H³.
enum class LinkFormat { R3_GAUSS, S3_LT, S3_PT, H3_PT };

inline Space format_space(LinkFormat f) {
    switch (f) {
        case LinkFormat::R3_GAUSS: return Space::R3;
        case LinkFormat::S3_LT:
        case LinkFormat::S3_PT: return Space::S3;
        case LinkFormat::H3_PT: return Space::H3;
    }
    return Space::R3;
}

inline const char* to_string(LinkFormat f) {
    switch (f) {
        case LinkFormat::R3_GAUSS: return "r3";
        case LinkFormat::S3_LT: return "s3-lt";
        case LinkFormat::S3_PT: return "s3-pt";
        case LinkFormat::H3_PT: return "h3-pt";
    }
    return "?";
}

inline LinkFormat link_format_from_string(const std::string& s) {
    if (s == "r3") return LinkFormat::R3_GAUSS;
    if (s == "s3-lt") return LinkFormat::S3_LT;
    if (s == "s3-pt") return LinkFormat::S3_PT;
    if (s == "h3-pt") return LinkFormat::H3_PT;
    throw precondition_error("unknown link format: " + s);
}

/// Prefactor applied to the grid sums: 1/4π² on S³, 1/4π in R³ and H³.
inline double link_prefactor(LinkFormat f) {
    return format_space(f) == Space::S3 ? 1.0 / (4.0 * kPi * kPi) : 1.0 / (4.0 * kPi);
}

struct QuadConfig {
    std::size_t n1 = 128;
    std::size_t n2 = 128;
    bool refine = false;
    double target_tol = 1e-8;
    std::size_t max_n = 2048;
    double min_distance = 1e-3;

    void check() const {
        if (n1 < 16 || n2 < 16) throw precondition_error("QuadConfig: n1, n2 >= 16");
        if (!(target_tol > 0.0)) throw precondition_error("QuadConfig: target_tol > 0");
    }
};

struct LinkResult {
    double value = 0.0;
    std::vector<double> term_values;  // prefactored contributions; they sum to value
    long long rounded = 0;
    double residual = 0.0;  // |value − rounded|
    std::size_t n1_used = 0, n2_used = 0;
    bool converged = true;
    double min_distance = 0.0;
    std::vector<std::string> warnings;
};

/// Pointwise integrand values before the prefactor. term2 is used only by
/// the two-term S3_LT format.
struct IntegrandValue {
    double term1 = 0.0;
    double term2 = 0.0;
};

namespace detail {

// Unnormalized kernel derivatives of Theorem-type linking kernels:
// d/dα of (π−α)cot α, (π−α)csc α, csch α.
inline double lt_phi_deriv(double a) {
    double s = std::sin(a), ct = std::cos(a) / s;
    return -ct - (kPi - a) / (s * s);
}
inline double pt_phi_deriv(double a) {
    double s = std::sin(a), ct = std::cos(a) / s;
    return -(1.0 + (kPi - a) * ct) / s;
}
inline double h3_phi_deriv(double a) {
    double sh = std::sinh(a);
    return -std::cosh(a) / (sh * sh);
}

}  // namespace detail

/// Evaluates the linking integrand at one configuration (x, dx) × (y, dy).
/// Cross products are taken in T_y with the frame orientation, kernels are
/// the unnormalized ones (prefactor applied at integration time). On S³ the
/// kernel gradient vanishes at antipodal pairs, so such pairs contribute 0.
inline IntegrandValue link_integrand(LinkFormat format, const Vec4& x, const Vec4& dx,
                                     const Vec4& y, const Vec4& dy) {
    IntegrandValue out;
    switch (format) {
        case LinkFormat::R3_GAUSS: {
            Vec4 d = x - y;
            double r = norm4(d);
            if (r < 1e-12) throw singularity_error("link_integrand: coincident points");
            Vec4 cr = cross_at(Space::R3, y, dx, dy);
            out.term1 = inner(Space::R3, cr, d) / (r * r * r);
            break;
        }
        case LinkFormat::S3_LT: {
            Vec4 ldx = quat_left_translate(x, y, dx);
            out.term2 = dot4(ldx, dy);
            double c = dot4(x, y);
            if (1.0 - c < kClampEps)
                throw singularity_error("link_integrand: coincident points");
            if (1.0 + c < kAntipodalEps) {
                out.term1 = 0.0;  // φ′∇α → 0 at the antipode
                break;
            }
            double a = std::acos(std::clamp(c, -1.0, 1.0));
            double sa = std::sin(a);
            Vec4 grad = detail::lt_phi_deriv(a) / sa * (c * y - x);
            out.term1 = dot4(cross_at(Space::S3, y, ldx, dy), grad);
            break;
        }
        case LinkFormat::S3_PT: {
            double c = dot4(x, y);
            if (1.0 - c < kClampEps)
                throw singularity_error("link_integrand: coincident points");
            if (1.0 + c < kAntipodalEps) break;  // gradient limit is zero
            double a = std::acos(std::clamp(c, -1.0, 1.0));
            double sa = std::sin(a);
            Vec4 pdx = parallel_transport(Space::S3, x, y, dx);
            Vec4 grad = detail::pt_phi_deriv(a) / sa * (c * y - x);
            out.term1 = dot4(cross_at(Space::S3, y, pdx, dy), grad);
            break;
        }
        case LinkFormat::H3_PT: {
            double c = inner(Space::H3, x, y);
            if (c - 1.0 < kClampEps)
                throw singularity_error("link_integrand: coincident points");
            double a = std::acosh(c);
            double sa = std::sinh(a);
            Vec4 pdx = parallel_transport(Space::H3, x, y, dx);
            Vec4 grad = detail::h3_phi_deriv(a) / sa * (c * y - x);
            out.term1 = metric_dot(Space::H3, cross_at(Space::H3, y, pdx, dy), grad);
            break;
        }
    }
    if (!std::isfinite(out.term1) || !std::isfinite(out.term2))
        throw singularity_error("link_integrand: non-finite value");
    return out;
}

namespace detail {

struct GridSums {
    double term1 = 0.0, term2 = 0.0;
};

inline GridSums link_grid_sums(LinkFormat format, const CurveSamples& k1,
                               const CurveSamples& k2) {
    std::size_t n1 = k1.size(), n2 = k2.size();
    std::vector<double> buf1(n1 * n2), buf2;
    bool two_terms = (format == LinkFormat::S3_LT);
    if (two_terms) buf2.resize(n1 * n2);
    parallel_for(n1, [&](std::size_t i) {
        const Vec4 &x = k1.positions[i], &dx = k1.velocities[i];
        for (std::size_t j = 0; j < n2; ++j) {
            IntegrandValue v =
                link_integrand(format, x, dx, k2.positions[j], k2.velocities[j]);
            buf1[i * n2 + j] = v.term1;
            if (two_terms) buf2[i * n2 + j] = v.term2;
        }
    });
    GridSums s;
    double cell = k1.parameter_step * k2.parameter_step;
    s.term1 = pairwise_sum(buf1) * cell;
    if (two_terms) s.term2 = pairwise_sum(buf2) * cell;
    return s;
}

inline LinkResult link_once(LinkFormat format, const CurveSamples& k1,
                            const CurveSamples& k2) {
    GridSums sums = link_grid_sums(format, k1, k2);
    double pref = link_prefactor(format);
    LinkResult r;
    if (format == LinkFormat::S3_LT) {
        // two-term form: prefactored first term minus prefactored second term
        r.term_values = {pref * sums.term1, -pref * sums.term2};
        r.value = r.term_values[0] + r.term_values[1];
    } else {
        r.term_values = {pref * sums.term1};
        r.value = r.term_values[0];
    }
    r.rounded = std::llround(r.value);
    r.residual = std::abs(r.value - static_cast<double>(r.rounded));
    r.n1_used = k1.size();
    r.n2_used = k2.size();
    return r;
}

}  // namespace detail

/// Linking number of two disjoint closed curves by periodic-trapezoid
/// product quadrature on an n1 × n2 grid (spectrally accurate for analytic
/// curves). With cfg.refine the grid doubles until successive values agree
/// to target_tol or max_n is reached; non-convergence is flagged, not
/// thrown. Summation order is fixed, so results do not depend on the
/// thread count.
inline LinkResult linking_number(LinkFormat format, const Curve& k1, const Curve& k2,
                                 QuadConfig cfg = {}) {
    cfg.check();
    if (k1.space() != format_space(format) || k2.space() != format_space(format))
        throw precondition_error("linking_number: curve space does not match format");

    CurveSamples s1 = sample(k1, cfg.n1), s2 = sample(k2, cfg.n2);
    double dmin = min_pair_distance(s1, s2);
    if (dmin <= cfg.min_distance)
        throw precondition_error(
            "linking_number: curves are not disjoint at the configured threshold "
            "(min sample distance " +
            std::to_string(dmin) + ")");

    LinkResult r = detail::link_once(format, s1, s2);
    r.min_distance = dmin;
    if (dmin < 0.05)
        r.warnings.push_back("curves closer than 0.05; quadrature accuracy degrades");

    if (cfg.refine) {
        std::size_t n1 = cfg.n1, n2 = cfg.n2;
        bool converged = false;
        while (n1 * 2 <= cfg.max_n && n2 * 2 <= cfg.max_n) {
            n1 *= 2;
            n2 *= 2;
            LinkResult next = detail::link_once(format, sample(k1, n1), sample(k2, n2));
            double change = std::abs(next.value - r.value);
            next.min_distance = r.min_distance;
            next.warnings = r.warnings;
            r = next;
            if (change < cfg.target_tol) {
                converged = true;
                break;
            }
        }
        r.converged = converged;
        if (!converged)
            r.warnings.push_back("refinement hit max_n before reaching target_tol");
    }
    return r;
}

inline LinkResult linking_number(LinkFormat format, const CurveSamples& s1,
                                 const CurveSamples& s2, double min_distance = 1e-3) {
    if (s1.space != format_space(format) || s2.space != format_space(format))
        throw precondition_error("linking_number: sample space does not match format");
    double dmin = min_pair_distance(s1, s2);
    if (dmin <= min_distance)
        throw precondition_error("linking_number: curves are not disjoint");
    LinkResult r = detail::link_once(format, s1, s2);
    r.min_distance = dmin;
    return r;
}

}  // namespace curvelink
