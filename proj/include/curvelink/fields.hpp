#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "curvelink/curves.hpp"
#include "curvelink/frame.hpp"
#include "curvelink/kernels.hpp"
#include "curvelink/linking.hpp"
#include "curvelink/quadrature.hpp"
#include "curvelink/quaternion.hpp"

namespace curvelink {

/// A vector field as a pure callable: point ↦ tangent vector at that point.
struct VectorFieldFn {
    Space space = Space::S3;
    std::function<Vec4(const Vec4&)> fn;

    Vec4 operator()(const Vec4& p) const { return fn(p); }
};

/// Scalar charge density. On S³ it must average to zero; on H³ / R³ it must
/// be compactly supported inside the quadrature region.
struct ChargeDensity {
    Space space = Space::S3;
    std::function<double(const Vec4&)> fn;

    double operator()(const Vec4& p) const { return fn(p); }
};

/// Quadrature grid over S³ or over a geodesic ball in H³. Nodes carry the
/// full volume weight (Jacobian included): Gauss–Legendre in the radial and
/// polar coordinates, uniform midpoints in the periodic azimuth.
struct VolumeGrid {
    Space space = Space::S3;
    std::vector<Vec4> points;
    std::vector<double> weights;
    Vec4 center{1, 0, 0, 0};
    double radius = 0.0;  // H³ ball radius; π on S³

    std::size_t size() const { return points.size(); }
    double total_weight() const { return pairwise_sum(weights); }
};

/// The unique isometry of S³/H³ taking x to y and fixing the orthogonal
/// complement of span(x, y):  M(v) = v − ⟨x+y,v⟩/(1+⟨x,y⟩)·x
///                                   + ⟨(1+2c)/(1+c)·x − 1/(1+c)·y, v⟩·y.
/// Restricted to tangent vectors it is parallel transport.
inline Mat4 point_to_point_isometry(Space s, const Vec4& x, const Vec4& y) {
    double c = inner(s, x, y);
    if (s == Space::S3 && 1.0 + c < kAntipodalEps)
        throw singularity_error("point_to_point_isometry: antipodal points");
    Vec4 w = ((1.0 + 2.0 * c) / (1.0 + c)) * x - (1.0 / (1.0 + c)) * y;
    Mat4 m;
    for (int j = 0; j < 4; ++j) {
        Vec4 e;
        e[j] = 1.0;
        Vec4 img = e - (inner(s, x + y, e) / (1.0 + c)) * x + inner(s, w, e) * y;
        for (int i = 0; i < 4; ++i) m(i, j) = img[i];
    }
    return m;
}

/// Full-S³ grid in hyperspherical coordinates about `center`
/// (radial α and polar θ by Gauss–Legendre, azimuth by uniform midpoints;
/// weight sin²α·sinθ). Total weight reproduces vol(S³) = 2π² to machine
/// accuracy.
inline VolumeGrid s3_volume_grid(int n_alpha = 48, int n_theta = 24, int n_phi = 48,
                                 const Vec4& center = {1, 0, 0, 0}) {
    VolumeGrid g;
    g.space = Space::S3;
    g.center = center;
    g.radius = kPi;
    std::vector<double> an, aw, tn, tw;
    gauss_legendre(n_alpha, 0.0, kPi, an, aw);
    gauss_legendre(n_theta, 0.0, kPi, tn, tw);
    Mat4 move = point_to_point_isometry(Space::S3, {1, 0, 0, 0}, center);
    double dphi = 2.0 * kPi / n_phi;
    g.points.reserve(static_cast<std::size_t>(n_alpha) * n_theta * n_phi);
    for (int ia = 0; ia < n_alpha; ++ia) {
        double sa = std::sin(an[ia]), ca = std::cos(an[ia]);
        for (int it = 0; it < n_theta; ++it) {
            double st = std::sin(tn[it]), ct = std::cos(tn[it]);
            for (int ip = 0; ip < n_phi; ++ip) {
                double phi = (ip + 0.5) * dphi;
                Vec4 p{ca, sa * st * std::cos(phi), sa * st * std::sin(phi), sa * ct};
                g.points.push_back(move * p);
                g.weights.push_back(sa * sa * st * aw[ia] * tw[it] * dphi);
            }
        }
    }
    return g;
}

/// Geodesic-ball grid of radius r_max in H³ about `center`; weight
/// sinh²α·sinθ. Total weight reproduces π(sinh 2R − 2R) to machine accuracy.
inline VolumeGrid h3_ball_grid(double r_max = 6.0, int n_alpha = 48, int n_theta = 24,
                               int n_phi = 48, const Vec4& center = {1, 0, 0, 0}) {
    VolumeGrid g;
    g.space = Space::H3;
    g.center = center;
    g.radius = r_max;
    std::vector<double> an, aw, tn, tw;
    gauss_legendre(n_alpha, 0.0, r_max, an, aw);
    gauss_legendre(n_theta, 0.0, kPi, tn, tw);
    Mat4 move = point_to_point_isometry(Space::H3, {1, 0, 0, 0}, center);
    double dphi = 2.0 * kPi / n_phi;
    g.points.reserve(static_cast<std::size_t>(n_alpha) * n_theta * n_phi);
    for (int ia = 0; ia < n_alpha; ++ia) {
        double sa = std::sinh(an[ia]), ca = std::cosh(an[ia]);
        for (int it = 0; it < n_theta; ++it) {
            double st = std::sin(tn[it]), ct = std::cos(tn[it]);
            for (int ip = 0; ip < n_phi; ++ip) {
                double phi = (ip + 0.5) * dphi;
                Vec4 p{ca, sa * st * std::cos(phi), sa * st * std::sin(phi), sa * ct};
                g.points.push_back(move * p);
                g.weights.push_back(sa * sa * st * aw[ia] * tw[it] * dphi);
            }
        }
    }
    return g;
}

namespace detail {

inline Vec4 pairwise_sum_vec4(std::span<const Vec4> v) {
    if (v.size() <= 8) {
        Vec4 s;
        for (const auto& x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum_vec4(v.first(half)) + pairwise_sum_vec4(v.subspan(half));
}

/// Deterministic weighted sum of a node functional over a grid, skipping
/// nodes within 1e−6 of the excluded point (dropped weight recorded).
template <typename NodeFn>
Vec4 grid_sum(const VolumeGrid& g, const Vec4* exclude, double* dropped_weight,
              NodeFn&& node) {
    std::vector<Vec4> buf(g.size());
    std::vector<double> dropped(exclude ? g.size() : 0, 0.0);
    parallel_for(g.size(), [&](std::size_t i) {
        if (exclude && distance(g.space, g.points[i], *exclude) < 1e-6) {
            if (!dropped.empty()) dropped[i] = g.weights[i];
            return;  // buf[i] stays zero
        }
        buf[i] = g.weights[i] * node(g.points[i]);
    });
    if (dropped_weight) *dropped_weight = dropped.empty() ? 0.0 : pairwise_sum(dropped);
    return pairwise_sum_vec4(buf);
}

template <typename NodeFn>
double grid_sum_scalar(const VolumeGrid& g, const Vec4* exclude, NodeFn&& node) {
    std::vector<double> buf(g.size(), 0.0);
    parallel_for(g.size(), [&](std::size_t i) {
        if (exclude && distance(g.space, g.points[i], *exclude) < 1e-6) return;
        buf[i] = g.weights[i] * node(g.points[i]);
    });
    return pairwise_sum(buf);
}

}  // namespace detail

/// Riemannian gradient of a scalar function by 4-point central differences
/// along geodesics in the local frame directions.
template <typename ScalarFn>
Vec4 grad_scalar(Space s, const Vec4& y, ScalarFn&& f, double h = 1e-3) {
    Frame fr = local_frame(s, y);
    Vec4 out;
    for (int i = 0; i < 3; ++i) {
        Vec4 e = fr[i];
        double d = (-f(geodesic_point(s, y, e, 2 * h)) +
                    8.0 * f(geodesic_point(s, y, e, h)) -
                    8.0 * f(geodesic_point(s, y, e, -h)) +
                    f(geodesic_point(s, y, e, -2 * h))) /
                   (12.0 * h);
        out += d * e;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Biot–Savart operators
// ---------------------------------------------------------------------------

/// Magnetic field of a unit line current along the sampled curve K, by
/// periodic-trapezoid quadrature of the format's line integrand. The LT
/// format keeps the two surviving terms (the gradient term integrates to
/// zero around a closed loop and is dropped).
inline Vec4 bs_line(LinkFormat format, const CurveSamples& k, const Vec4& y,
                    double min_distance = 1e-3) {
    Space s = format_space(format);
    if (k.space != s) throw precondition_error("bs_line: curve space mismatch");
    for (const auto& p : k.positions)
        if (distance(s, p, y) < min_distance)
            throw precondition_error("bs_line: evaluation point too close to the wire");

    std::size_t n = k.size();
    std::vector<Vec4> buf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec4 &x = k.positions[i], &dx = k.velocities[i];
        switch (format) {
            case LinkFormat::R3_GAUSS:
                buf[i] = cross_at(Space::R3, y, dx,
                                  kernel_grad_y(KernelId::R3_PHI0, Space::R3, x, y));
                break;
            case LinkFormat::S3_LT: {
                Vec4 ldx = quat_left_translate(x, y, dx);
                buf[i] = cross_at(Space::S3, y, ldx,
                                  kernel_grad_y(KernelId::S3_PHI0, Space::S3, x, y)) -
                         (1.0 / (4.0 * kPi * kPi)) * ldx;
                break;
            }
            case LinkFormat::S3_PT:
                buf[i] = cross_at(Space::S3, y, parallel_transport(Space::S3, x, y, dx),
                                  kernel_grad_y(KernelId::S3_PT_PHI1, Space::S3, x, y));
                break;
            case LinkFormat::H3_PT:
                buf[i] = cross_at(Space::H3, y, parallel_transport(Space::H3, x, y, dx),
                                  kernel_grad_y(KernelId::H3_PHI1, Space::H3, x, y));
                break;
        }
        buf[i] *= k.parameter_step;
    }
    return detail::pairwise_sum_vec4(buf);
}

/// Volumetric Biot–Savart field of a current distribution V at y.
/// S3_LT uses the three-term left-translation form (its outer gradient is
/// realized by differencing the scalar integral, never by differentiating
/// under the integral); S3_PT and H3_PT use the single cross-product term.
inline Vec4 bs_volume(LinkFormat format, const VectorFieldFn& v, const VolumeGrid& grid,
                      const Vec4& y, double* dropped_weight = nullptr) {
    Space s = format_space(format);
    if (grid.space != s || v.space != s)
        throw precondition_error("bs_volume: space mismatch");
    switch (format) {
        case LinkFormat::S3_LT: {
            Vec4 term_b = detail::grid_sum(grid, &y, dropped_weight, [&](const Vec4& x) {
                return cross_at(Space::S3, y, quat_left_translate(x, y, v(x)),
                                kernel_grad_y(KernelId::S3_PHI0, Space::S3, x, y));
            });
            Vec4 term_a = detail::grid_sum(grid, nullptr, nullptr, [&](const Vec4& x) {
                return quat_left_translate(x, y, v(x));
            });
            auto scalar = [&](const Vec4& yy) {
                return detail::grid_sum_scalar(grid, &yy, [&](const Vec4& x) {
                    return dot4(quat_left_translate(x, yy, v(x)),
                                kernel_grad_y(KernelId::S3_LT_PHI1, Space::S3, x, yy));
                });
            };
            Vec4 term_g = grad_scalar(Space::S3, y, scalar);
            return term_b - (1.0 / (4.0 * kPi * kPi)) * term_a + 2.0 * term_g;
        }
        case LinkFormat::S3_PT:
            return detail::grid_sum(grid, &y, dropped_weight, [&](const Vec4& x) {
                return cross_at(Space::S3, y, parallel_transport(Space::S3, x, y, v(x)),
                                kernel_grad_y(KernelId::S3_PT_PHI1, Space::S3, x, y));
            });
        case LinkFormat::H3_PT:
            return detail::grid_sum(grid, &y, dropped_weight, [&](const Vec4& x) {
                return cross_at(Space::H3, y, parallel_transport(Space::H3, x, y, v(x)),
                                kernel_grad_y(KernelId::H3_PHI1, Space::H3, x, y));
            });
        default:
            throw precondition_error("bs_volume: unsupported format");
    }
}

// ---------------------------------------------------------------------------
// Green's operators and the electric field
// ---------------------------------------------------------------------------

/// Scalar Green's operator: Gr(f)(y) = ∫ f(x) φ₀(x,y) dx.
inline double green_scalar(Space s, const std::function<double(const Vec4&)>& f,
                           const VolumeGrid& grid, const Vec4& y) {
    if (grid.space != s) throw precondition_error("green_scalar: space mismatch");
    KernelId phi0 = s == Space::S3   ? KernelId::S3_PHI0
                    : s == Space::H3 ? KernelId::H3_PHI0
                                     : KernelId::R3_PHI0;
    return detail::grid_sum_scalar(grid, &y, [&](const Vec4& x) {
        return f(x) * kernel_eval(phi0, distance(s, x, y));
    });
}

/// Vector Green's operator on S³ in left-translation format:
/// Gr(V) = ∫ L V φ₀ + 2 ∫ L V × ∇φ₁ + 4 ∇ ∫ L V · ∇φ₂ with the LT kernel
/// family.
inline Vec4 green_lt_s3(const VectorFieldFn& v, const VolumeGrid& grid, const Vec4& y,
                        double* dropped_weight = nullptr) {
    if (grid.space != Space::S3 || v.space != Space::S3)
        throw precondition_error("green_lt_s3: space mismatch");
    Vec4 term_a = detail::grid_sum(grid, &y, dropped_weight, [&](const Vec4& x) {
        return kernel_eval(KernelId::S3_PHI0, distance(Space::S3, x, y)) *
               quat_left_translate(x, y, v(x));
    });
    Vec4 term_b = detail::grid_sum(grid, nullptr, nullptr, [&](const Vec4& x) {
        return cross_at(Space::S3, y, quat_left_translate(x, y, v(x)),
                        kernel_grad_y(KernelId::S3_LT_PHI1, Space::S3, x, y));
    });
    auto scalar = [&](const Vec4& yy) {
        return detail::grid_sum_scalar(grid, &yy, [&](const Vec4& x) {
            return dot4(quat_left_translate(x, yy, v(x)),
                        kernel_grad_y(KernelId::S3_LT_PHI2, Space::S3, x, yy));
        });
    };
    Vec4 term_g = grad_scalar(Space::S3, y, scalar);
    return term_a + 2.0 * term_b + 4.0 * term_g;
}

/// Vector Green's operator in parallel-transport format (S³ and H³):
/// Gr(V) = ∫ P V φ₂ + ∇ ∫ P V · ∇φ₃. The H³ form is one representative of
/// a one-parameter family; only constructive properties are asserted of it.
inline Vec4 green_pt(Space s, const VectorFieldFn& v, const VolumeGrid& grid,
                     const Vec4& y, double* dropped_weight = nullptr) {
    if (s == Space::R3 || grid.space != s || v.space != s)
        throw precondition_error("green_pt: space mismatch");
    KernelId phi2 = s == Space::S3 ? KernelId::S3_PT_PHI2 : KernelId::H3_PHI2;
    KernelId phi3 = s == Space::S3 ? KernelId::S3_PT_PHI3 : KernelId::H3_PHI3;
    Vec4 term_a = detail::grid_sum(grid, &y, dropped_weight, [&](const Vec4& x) {
        return kernel_eval(phi2, distance(s, x, y)) * parallel_transport(s, x, y, v(x));
    });
    auto scalar = [&](const Vec4& yy) {
        return detail::grid_sum_scalar(grid, &yy, [&](const Vec4& x) {
            return metric_dot(s, parallel_transport(s, x, yy, v(x)),
                              kernel_grad_y(phi3, s, x, yy));
        });
    };
    Vec4 term_g = grad_scalar(s, y, scalar);
    return term_a + term_g;
}

/// Electric field of a charge density: E(ρ)(y) = ∇_y ∫ ρ(x) φ₀(x,y) dx.
inline Vec4 electric_field(Space s, const ChargeDensity& rho, const VolumeGrid& grid,
                           const Vec4& y) {
    if (grid.space != s || rho.space != s)
        throw precondition_error("electric_field: space mismatch");
    return grad_scalar(s, y, [&](const Vec4& yy) {
        return green_scalar(s, rho.fn, grid, yy);
    });
}

/// Grid average of a charge density (must vanish on S³).
inline double charge_average(const ChargeDensity& rho, const VolumeGrid& grid) {
    return detail::grid_sum_scalar(grid, nullptr, [&](const Vec4& x) { return rho(x); }) /
           grid.total_weight();
}

// ---------------------------------------------------------------------------
// Finite-difference curl and divergence from their primitive definitions
// ---------------------------------------------------------------------------

/// Curl by circulation: for each frame direction, the circulation of F
/// around the geodesic circle of radius h orthogonal to it (64-node
/// trapezoid) divided by the geodesic disk area, Richardson-extrapolated
/// over h and h/2.
inline Vec4 fd_curl(const VectorFieldFn& f, const Vec4& y, double h = 0.02,
                    int nodes = 64) {
    if (!(h >= 1e-4 && h <= 1e-1)) throw precondition_error("fd_curl: h out of range");
    Space s = f.space;
    Frame fr = local_frame(s, y);
    auto disk_area = [s](double r) {
        switch (s) {
            case Space::R3: return kPi * r * r;
            case Space::S3: return 2.0 * kPi * (1.0 - std::cos(r));
            case Space::H3: return 2.0 * kPi * (std::cosh(r) - 1.0);
        }
        return 0.0;
    };
    auto estimate = [&](double r) {
        Vec4 out;
        double dphi = 2.0 * kPi / nodes;
        for (int i = 0; i < 3; ++i) {
            const Vec4& ej = fr[(i + 1) % 3];
            const Vec4& ek = fr[(i + 2) % 3];
            std::vector<double> circ(nodes);
            for (int n = 0; n < nodes; ++n) {
                double phi = n * dphi;
                Vec4 dir = std::cos(phi) * ej + std::sin(phi) * ek;
                Vec4 c = geodesic_point(s, y, dir, r);
                Vec4 dt = -std::sin(phi) * ej + std::cos(phi) * ek;  // direction only
                Vec4 tangent;  // dc/dφ
                switch (s) {
                    case Space::R3: tangent = r * dt; break;
                    case Space::S3: tangent = std::sin(r) * dt; break;
                    case Space::H3: tangent = std::sinh(r) * dt; break;
                }
                circ[n] = metric_dot(s, f(c), tangent) * dphi;
            }
            out += (pairwise_sum(circ) / disk_area(r)) * fr[i];
        }
        return out;
    };
    Vec4 ch = estimate(h), ch2 = estimate(h / 2.0);
    return (4.0 * ch2 - ch) / 3.0;  // leading error is O(h²)
}

/// Divergence by flux: flux of F through the geodesic sphere of radius h
/// about y (Gauss–Legendre × uniform 16×32 grid) divided by the enclosed
/// volume, Richardson-extrapolated over h and h/2.
inline double fd_div(const VectorFieldFn& f, const Vec4& y, double h = 0.02,
                     int n_theta = 16, int n_phi = 32) {
    if (!(h >= 1e-4 && h <= 1e-1)) throw precondition_error("fd_div: h out of range");
    Space s = f.space;
    Frame fr = local_frame(s, y);
    auto ball_volume = [s](double r) {
        switch (s) {
            case Space::R3: return 4.0 * kPi * r * r * r / 3.0;
            case Space::S3: return 2.0 * kPi * r - kPi * std::sin(2.0 * r);
            case Space::H3: return kPi * std::sinh(2.0 * r) - 2.0 * kPi * r;
        }
        return 0.0;
    };
    std::vector<double> tn, tw;
    gauss_legendre(n_theta, 0.0, kPi, tn, tw);
    double dphi = 2.0 * kPi / n_phi;
    auto estimate = [&](double r) {
        double sr, cr, area_jac;
        switch (s) {
            case Space::R3: sr = r, cr = 1.0, area_jac = r * r; break;
            case Space::S3: sr = std::sin(r), cr = std::cos(r), area_jac = sr * sr; break;
            case Space::H3:
                sr = std::sinh(r), cr = std::cosh(r), area_jac = sr * sr;
                break;
        }
        std::vector<double> flux(static_cast<std::size_t>(n_theta) * n_phi);
        for (int it = 0; it < n_theta; ++it) {
            double st = std::sin(tn[it]), ct = std::cos(tn[it]);
            for (int ip = 0; ip < n_phi; ++ip) {
                double phi = (ip + 0.5) * dphi;
                Vec4 nhat = st * std::cos(phi) * fr.e1 + st * std::sin(phi) * fr.e2 +
                            ct * fr.e3;
                Vec4 p = geodesic_point(s, y, nhat, r);
                Vec4 normal = geodesic_velocity(s, y, nhat, r);  // outward unit
                flux[static_cast<std::size_t>(it) * n_phi + ip] =
                    metric_dot(s, f(p), normal) * area_jac * st * tw[it] * dphi;
            }
        }
        (void)cr;
        return pairwise_sum(flux) / ball_volume(r);
    };
    double dh = estimate(h), dh2 = estimate(h / 2.0);
    return (4.0 * dh2 - dh) / 3.0;
}

// ---------------------------------------------------------------------------
// Pointwise identities: transported fields, the Key Lemma, Maxwell residuals
// ---------------------------------------------------------------------------

/// The field y ↦ P_yx v of a single tangent vector transported everywhere.
inline VectorFieldFn transported_field(Space s, const Vec4& x, const Vec4& v) {
    return {s, [s, x, v](const Vec4& y) { return parallel_transport(s, x, y, v); }};
}

/// Closed form of ∇ × P_yx v: [y, x, v]/(1 + ⟨x,y⟩).
inline Vec4 transported_field_curl(Space s, const Vec4& x, const Vec4& v, const Vec4& y) {
    return triple_product(s, y, x, v) / (1.0 + inner(s, x, y));
}

/// Closed form of ∇ · P_yx v: −2⟨y,v⟩/(1 + ⟨x,y⟩).
inline double transported_field_div(Space s, const Vec4& x, const Vec4& v, const Vec4& y) {
    return -2.0 * inner(s, y, v) / (1.0 + inner(s, x, y));
}

/// Pointwise identity that integrates to Maxwell's equation: with
/// m(α) = cos α·φ(α) on S³ (cosh α·φ on H³) and ε = ∓1 the shift sign,
///   ∇_y × {P_yx v × ∇_y φ} − ∇_y {v · ∇_x m} = (Δφ + ε φ)(v − ⟨v,y⟩ y).
/// Returns the Riemannian norm of LHS − RHS; the identity holds for any
/// smooth kernel, not only fundamental solutions.
inline double key_lemma_residual(Space s, const Vec4& x, const Vec4& v, const Vec4& y,
                                 const RadialFn& phi, double curl_h = 0.02,
                                 double grad_h = 1e-3) {
    if (s == Space::R3) throw precondition_error("key_lemma_residual: curved spaces only");
    double shift = (s == Space::S3) ? -1.0 : 1.0;

    VectorFieldFn cross_field{
        s, [&, s](const Vec4& yy) {
            double a = distance(s, x, yy);
            Vec4 grad = phi.d1(a) * grad_distance_y(s, x, yy);
            return cross_at(s, yy, parallel_transport(s, x, yy, v), grad);
        }};
    Vec4 term1 = fd_curl(cross_field, y, curl_h);

    auto m_deriv = [&](double a) {
        if (s == Space::S3) return -std::sin(a) * phi.value(a) + std::cos(a) * phi.d1(a);
        return std::sinh(a) * phi.value(a) + std::cosh(a) * phi.d1(a);
    };
    auto scalar = [&](const Vec4& yy) {
        double a = distance(s, x, yy);
        Vec4 grad_x = m_deriv(a) * grad_distance_y(s, yy, x);  // gradient in x
        return metric_dot(s, v, grad_x);
    };
    Vec4 term2 = grad_scalar(s, y, scalar, grad_h);

    double a = distance(s, x, y);
    double factor = radial_laplacian(s, phi, a) + shift * phi.value(a);
    Vec4 rhs = factor * project_to_tangent(s, y, v);

    return metric_norm(s, term1 - term2 - rhs);
}

inline double key_lemma_residual(Space s, const Vec4& x, const Vec4& v, const Vec4& y,
                                 KernelId id) {
    return key_lemma_residual(s, x, v, y, radial_fn(id));
}

/// Maxwell residual |∇×BS(V) − V(y) − ∇_y ∫ V·∇_x φ₀| for a volumetric
/// current. The gradient term is the time derivative of the electric field
/// caused by charge accumulation; it vanishes for divergence-free V.
inline double maxwell_residual_volume(LinkFormat format, const VectorFieldFn& v,
                                      const VolumeGrid& grid, const Vec4& y,
                                      double curl_h = 0.02) {
    Space s = format_space(format);
    KernelId phi0 = s == Space::S3 ? KernelId::S3_PHI0
                                   : (s == Space::H3 ? KernelId::H3_PHI0 : KernelId::R3_PHI0);
    VectorFieldFn field{s, [&](const Vec4& yy) { return bs_volume(format, v, grid, yy); }};
    Vec4 curl = fd_curl(field, y, curl_h);
    auto scalar = [&](const Vec4& yy) {
        return detail::grid_sum_scalar(grid, &yy, [&](const Vec4& x) {
            double a = distance(s, x, yy);
            Vec4 grad_x = kernel_deriv(phi0, a) * grad_distance_y(s, yy, x);
            return metric_dot(s, v(x), grad_x);
        });
    };
    Vec4 grad_term = grad_scalar(s, y, scalar);
    return metric_norm(s, curl - v(y) - grad_term);
}

/// Maxwell/Ampère residual for a line current: off the wire the current
/// vanishes and the field of a loop is curl-free, so the residual is just
/// |∇×BS|(y).
inline double maxwell_residual_line(LinkFormat format, const CurveSamples& k,
                                    const Vec4& y, double curl_h = 0.02) {
    Space s = format_space(format);
    VectorFieldFn field{s, [&](const Vec4& yy) { return bs_line(format, k, yy); }};
    return metric_norm(s, fd_curl(field, y, curl_h));
}

/// Circulation of a field around a closed sampled loop (periodic trapezoid).
inline double circulation(const VectorFieldFn& f, const CurveSamples& loop) {
    std::vector<double> buf(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i)
        buf[i] = metric_dot(loop.space, f(loop.positions[i]), loop.velocities[i]) *
                 loop.parameter_step;
    return pairwise_sum(buf);
}

/// Left/right-invariant fields as VectorFieldFn (axis 1..3 picks i, j, k).
inline VectorFieldFn left_invariant_vf(int axis) {
    return {Space::S3, [axis](const Vec4& x) { return left_invariant_field(axis, x); }};
}
inline VectorFieldFn right_invariant_vf(int axis) {
    return {Space::S3, [axis](const Vec4& x) { return right_invariant_field(axis, x); }};
}

}  // namespace curvelink
