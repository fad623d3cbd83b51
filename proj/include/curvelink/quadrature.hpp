#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace curvelink {

/// Global cap on worker threads (CLI --threads / CURVELINK_THREADS).
/// 0 means "use hardware concurrency". Results never depend on the cap:
/// parallel work writes into per-index slots and is reduced in fixed order.
inline std::atomic<unsigned>& thread_limit() {
    static std::atomic<unsigned> limit{0};
    return limit;
}

inline unsigned effective_threads(std::size_t n) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned cap = thread_limit().load();
    if (cap != 0) hw = std::min(hw, cap);
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, n)));
}

/// Runs fn(i) for i in [0, n), split into contiguous chunks across threads.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
    unsigned nt = effective_threads(n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Pairwise (cascade) summation in a fixed order; deterministic and far more
/// accurate than naive accumulation on long sums.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace gk {
// Gauss–Kronrod 7–15 nodes/weights on [-1, 1].
inline constexpr double kNodes[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
inline constexpr double kWeightsK[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
inline constexpr double kWeightsG[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};
}  // namespace gk

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail {

template <typename F>
void gk15(const F& f, double a, double b, double& value, double& error) {
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double resk = 0.0, resg = 0.0;
    for (int i = 0; i < 15; ++i) {
        double fx = f(c + h * gk::kNodes[i]);
        resk += gk::kWeightsK[i] * fx;
        if (i % 2 == 1) resg += gk::kWeightsG[i / 2] * fx;
    }
    value = resk * h;
    error = std::abs((resk - resg) * h);
}

template <typename F>
void adapt(const F& f, double a, double b, double tol, int depth, double& acc,
           double& err_acc, bool& ok) {
    double v, e;
    gk15(f, a, b, v, e);
    if (e <= tol || depth >= 48) {
        acc += v;
        err_acc += e;
        if (e > tol && depth >= 48) ok = false;
        return;
    }
    double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1, acc, err_acc, ok);
    adapt(f, m, b, 0.5 * tol, depth + 1, acc, err_acc, ok);
}

}  // namespace detail

/// Adaptive Gauss–Kronrod integration of f over [a, b]. The tolerance is
/// rel_tol · |integral| + abs_tol, refined by interval bisection; endpoints
/// are never evaluated, so integrable endpoint singularities are fine.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                     double abs_tol = 1e-14) {
    double v0, e0;
    detail::gk15(f, a, b, v0, e0);
    double tol = std::max(abs_tol, rel_tol * std::abs(v0));
    if (e0 <= tol) return {v0, e0, true};
    // two sweeps: the first estimate fixes the scale for the tolerance
    for (int sweep = 0; sweep < 2; ++sweep) {
        double acc = 0.0, err = 0.0;
        bool ok = true;
        detail::adapt(f, a, b, tol, 0, acc, err, ok);
        tol = std::max(abs_tol, rel_tol * std::abs(acc));
        if (err <= tol || sweep == 1) return {acc, err, ok && err <= tol * 8};
    }
    return {};
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [a, b].
/// Newton iteration on the Legendre recurrence.
inline void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    int m = (n + 1) / 2;
    double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

}  // namespace curvelink
