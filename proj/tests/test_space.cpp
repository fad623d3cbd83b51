#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "curvelink/frame.hpp"
#include "curvelink/isometry.hpp"
#include "curvelink/quaternion.hpp"
#include "curvelink/space.hpp"

using namespace curvelink;
using Catch::Approx;

namespace {

Vec4 random_point(Space s, Rng& rng) {
    if (s == Space::R3)
        return {0.0, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Vec4 g = rng.gaussian_vec4();
    if (s == Space::S3) return g / norm4(g);
    // H³: normalize a timelike direction onto the upper sheet
    Vec4 v{0.0, 0.5 * g[1], 0.5 * g[2], 0.5 * g[3]};
    double r2 = v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
    v[0] = std::sqrt(1.0 + r2);
    return v;
}

Vec4 random_tangent(Space s, const Vec4& x, Rng& rng) {
    Vec4 w = project_to_tangent(s, x, rng.gaussian_vec4());
    return w / metric_norm(s, w);
}

}  // namespace

TEST_CASE("inner products by space") {
    CHECK(inner(Space::S3, {1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
    CHECK(inner(Space::H3, {0, 1, 0, 0}, {0, 1, 0, 0}) == -1.0);
    Vec4 a{std::cosh(1.0), std::sinh(1.0), 0, 0};
    CHECK(inner(Space::H3, a, {1, 0, 0, 0}) == Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(inner(Space::H3, a, {1, 0, 0, 0}) == Approx(1.5430806348).margin(1e-9));
    // bilinear + symmetric, Minkowski signature
    CHECK(inner(Space::H3, {2, 3, 4, 5}, {1, 1, 1, 1}) == 2.0 - 3.0 - 4.0 - 5.0);
    CHECK(inner(Space::R3, {7, 1, 2, 3}, {9, 4, 5, 6}) == 4.0 + 10.0 + 18.0);
}

TEST_CASE("geodesic distance") {
    CHECK(distance(Space::S3, {1, 0, 0, 0}, {0, 1, 0, 0}) == Approx(kPi / 2));
    CHECK(distance(Space::S3, {1, 0, 0, 0}, {-1, 0, 0, 0}) == Approx(kPi));
    Vec4 y{std::cosh(2.0), std::sinh(2.0), 0, 0};
    CHECK(distance(Space::H3, {1, 0, 0, 0}, y) == Approx(2.0).epsilon(1e-12));
    CHECK(distance(Space::R3, {0, 1, 2, 2}, {0, 1, 2, 2}) == 0.0);
    // clamping keeps slightly-off-sphere dots in domain
    Vec4 x{1.0 + 5e-13, 0, 0, 0};
    CHECK(distance(Space::S3, x, {1, 0, 0, 0}) == 0.0);
}

TEST_CASE("distance gradient closed forms") {
    double t = 0.7;
    Vec4 x{1, 0, 0, 0}, y{std::cos(t), std::sin(t), 0, 0};
    Vec4 g = grad_distance_y(Space::S3, x, y);
    CHECK(max_abs(g - Vec4{-std::sin(t), std::cos(t), 0, 0}) < 1e-12);

    Vec4 yh{std::cosh(1.0), std::sinh(1.0), 0, 0};
    Vec4 gh = grad_distance_y(Space::H3, {1, 0, 0, 0}, yh);
    CHECK(max_abs(gh - Vec4{std::sinh(1.0), std::cosh(1.0), 0, 0}) < 1e-12);

    CHECK_THROWS_AS(grad_distance_y(Space::S3, x, x), singularity_error);
    CHECK_THROWS_AS(grad_distance_y(Space::S3, x, -x), singularity_error);
}

TEST_CASE("distance gradient properties at random configurations") {
    Rng rng(42);
    for (Space s : {Space::R3, Space::S3, Space::H3}) {
        for (int k = 0; k < 30; ++k) {
            Vec4 x = random_point(s, rng), y = random_point(s, rng);
            double a = distance(s, x, y);
            if (a < 1e-3 || (s == Space::S3 && a > kPi - 1e-3)) continue;
            Vec4 g = grad_distance_y(s, x, y);
            // unit Riemannian norm, tangent at y
            CHECK(metric_norm(s, g) == Approx(1.0).margin(1e-10));
            CHECK(tangency_residual(s, y, g) < 1e-10);
            // central-difference derivative of distance along g is +1
            double h = 1e-4;
            double dplus = distance(s, x, geodesic_point(s, y, g, h));
            double dminus = distance(s, x, geodesic_point(s, y, g, -h));
            CHECK((dplus - dminus) / (2 * h) == Approx(1.0).margin(1e-6));
            // P_xy grad_y = −grad_x
            Vec4 gx = grad_distance_y(s, y, x);
            Vec4 moved = parallel_transport(s, y, x, g);
            CHECK(max_abs(moved + gx) < 1e-9);
        }
    }
}

TEST_CASE("triple product basics") {
    CHECK(max_abs(triple_product(Space::S3, kBasis0, kBasis1, kBasis2) - kBasis3) == 0.0);
    CHECK(max_abs(triple_product(Space::H3, kBasis0, kBasis1, kBasis2) + kBasis3) == 0.0);

    Rng rng(7);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 20; ++k) {
            auto unit = [&rng] {
                Vec4 g = rng.gaussian_vec4();
                return g / norm4(g);
            };
            Vec4 a = unit(), b = unit(), c = unit(), d = unit();
            Vec4 t = triple_product(s, a, b, c);
            // defining identity ⟨[a,b,c],d⟩ = det(a,b,c,d)
            CHECK(inner(s, t, d) == Approx(det4(a, b, c, d)).margin(1e-13));
            // alternating
            CHECK(max_abs(triple_product(s, b, a, c) + t) < 1e-15);
            CHECK(max_abs(triple_product(s, a, c, b) + t) < 1e-15);
            CHECK(inner(s, t, a) == Approx(0.0).margin(1e-13));
        }
    }
}

TEST_CASE("triple product frame identity at x = (1,0,0,0)") {
    // [y, x, X1] = y2 E3 − y3 E2 on S³ and = y3 E2 − y2 E3 on H³
    Rng rng(11);
    for (int k = 0; k < 10; ++k) {
        Vec4 y = random_point(Space::S3, rng);
        Frame f = moving_frame(Space::S3, y);
        Vec4 lhs = triple_product(Space::S3, y, kBasis0, kBasis1);
        CHECK(max_abs(lhs - (y[2] * f.e3 - y[3] * f.e2)) < 1e-12);

        Vec4 yh = random_point(Space::H3, rng);
        Frame fh = moving_frame(Space::H3, yh);
        Vec4 lhsh = triple_product(Space::H3, yh, kBasis0, kBasis1);
        CHECK(max_abs(lhsh - (yh[3] * fh.e2 - yh[2] * fh.e3)) < 1e-11);
    }
}

TEST_CASE("triple product equivariance under isometries") {
    Rng rng(13);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 10; ++k) {
            Isometry iso = random_isometry(s, 100 + k);
            Vec4 a = rng.gaussian_vec4(), b = rng.gaussian_vec4(), c = rng.gaussian_vec4();
            Vec4 lhs = triple_product(s, iso.m * a, iso.m * b, iso.m * c);
            Vec4 rhs = iso.m * triple_product(s, a, b, c);
            CHECK(max_abs(lhs - rhs) < 1e-9);
        }
    }
}

TEST_CASE("parallel transport closed forms and properties") {
    double al = 0.9;
    Vec4 x{1, 0, 0, 0}, y{std::cos(al), std::sin(al), 0, 0};
    CHECK(max_abs(parallel_transport(Space::S3, x, y, {0, 0, 1, 0}) - Vec4{0, 0, 1, 0}) <
          1e-15);
    CHECK(max_abs(parallel_transport(Space::S3, x, y, {0, 1, 0, 0}) -
                  Vec4{-std::sin(al), std::cos(al), 0, 0}) < 1e-15);
    Vec4 yh{std::cosh(al), std::sinh(al), 0, 0};
    CHECK(max_abs(parallel_transport(Space::H3, x, yh, {0, 1, 0, 0}) -
                  Vec4{std::sinh(al), std::cosh(al), 0, 0}) < 1e-14);

    CHECK_THROWS_AS(parallel_transport(Space::S3, x, -x, Vec4{0, 1, 0, 0}),
                    singularity_error);

    Rng rng(3);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 25; ++k) {
            Vec4 a = random_point(s, rng), b = random_point(s, rng);
            if (s == Space::S3 && 1.0 + dot4(a, b) < 1e-3) continue;
            Vec4 v = random_tangent(s, a, rng), w = random_tangent(s, a, rng);
            Vec4 pv = parallel_transport(s, a, b, v), pw = parallel_transport(s, a, b, w);
            CHECK(tangency_residual(s, b, pv) < 1e-10);
            CHECK(metric_dot(s, pv, pw) == Approx(metric_dot(s, v, w)).margin(1e-10));
            // round trip is the identity
            CHECK(max_abs(parallel_transport(s, b, a, pv) - v) < 1e-10);
            // P_xx = id
            CHECK(max_abs(parallel_transport(s, a, a, v) - v) < 1e-12);
        }
    }
}

TEST_CASE("quaternion left translation") {
    Vec4 one{1, 0, 0, 0}, i{0, 1, 0, 0}, j{0, 0, 1, 0};
    CHECK(max_abs(quat_left_translate(one, j, i) - Vec4{0, 0, 0, -1}) == 0.0);  // j·i = −k
    CHECK(max_abs(quat_left_translate(one, one, i) - i) == 0.0);

    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        Vec4 y = random_point(Space::S3, rng);
        // the field y ↦ L_{y·1}i equals y·i = (−y₁, y₀, y₃, −y₂)
        Vec4 v = quat_left_translate(one, y, i);
        CHECK(max_abs(v - Vec4{-y[1], y[0], y[3], -y[2]}) < 1e-15);
        // norm preservation, tangency at y
        Vec4 x = random_point(Space::S3, rng);
        Vec4 t = random_tangent(Space::S3, x, rng);
        Vec4 lt = quat_left_translate(x, y, t);
        CHECK(norm4(lt) == Approx(norm4(t)).epsilon(1e-12));
        CHECK(tangency_residual(Space::S3, y, lt) < 1e-12);
        // left translation is defined at the antipode as well
        CHECK_NOTHROW(quat_left_translate(x, -x, t));
    }
}

TEST_CASE("moving frame matches the transported basis and the closed forms") {
    CHECK(max_abs(moving_frame(Space::S3, {1, 0, 0, 0}).e1 - kBasis1) == 0.0);
    Frame f = moving_frame(Space::S3, {0, 1, 0, 0});
    CHECK(max_abs(f.e1 - Vec4{-1, 0, 0, 0}) < 1e-15);
    Frame fh = moving_frame(Space::H3, {std::cosh(1.0), std::sinh(1.0), 0, 0});
    CHECK(max_abs(fh.e1 - Vec4{std::sinh(1.0), std::cosh(1.0), 0, 0}) < 1e-14);

    Rng rng(9);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 20; ++k) {
            Vec4 y = random_point(s, rng);
            Frame fr = moving_frame(s, y);
            // closed forms: E_i = X_i ∓ y_i/(1+y0) (x+y) depending on the form
            double sign = (s == Space::S3) ? -1.0 : 1.0;
            Vec4 xy = Vec4{1, 0, 0, 0} + y;
            for (int i = 0; i < 3; ++i) {
                Vec4 e = fr[i];
                Vec4 axis = (i == 0) ? kBasis1 : (i == 1 ? kBasis2 : kBasis3);
                Vec4 closed = axis + sign * (y[i + 1] / (1.0 + y[0])) * xy;
                CHECK(max_abs(e - closed) < 1e-12);
                for (int jj = 0; jj <= i; ++jj)
                    CHECK(metric_dot(s, e, fr[jj]) ==
                          Approx(i == jj ? 1.0 : 0.0).margin(1e-10));
            }
            // positively oriented
            CHECK(metric_dot(s, cross_at(s, y, fr.e1, fr.e2), fr.e3) ==
                  Approx(1.0).margin(1e-10));
        }
    }
}

TEST_CASE("project_to_tangent") {
    Vec4 x{1, 0, 0, 0};
    CHECK(max_abs(project_to_tangent(Space::S3, x, {5, 1, 2, 3}) - Vec4{0, 1, 2, 3}) ==
          0.0);
    Rng rng(17);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 20; ++k) {
            Vec4 p = random_point(s, rng), w = rng.gaussian_vec4();
            Vec4 t = project_to_tangent(s, p, w);
            CHECK(std::abs(inner(s, p, t)) < 1e-14);
            CHECK(max_abs(project_to_tangent(s, p, t) - t) < 1e-14);  // idempotent
            if (s == Space::H3 && metric_norm(s, t) > 1e-9)
                CHECK(inner(s, t, t) < 0.0);  // spacelike
        }
    }
}

TEST_CASE("random isometries satisfy the group constraints") {
    for (Space s : {Space::R3, Space::S3, Space::H3}) {
        for (int seed = 0; seed < 5; ++seed) {
            Isometry iso = random_isometry(s, seed);
            CHECK(iso.form_residual() < 1e-10);
            if (s != Space::R3) CHECK(det4(iso.m) == Approx(1.0).margin(1e-10));
            if (s == Space::H3) CHECK(iso.m(0, 0) > 0.0);
            // determinism
            Isometry again = random_isometry(s, seed);
            CHECK(max_abs(again.m.row(0) - iso.m.row(0)) == 0.0);
            // distances are preserved
            Rng rng(seed + 31);
            for (int k = 0; k < 5; ++k) {
                Vec4 x = random_point(s, rng), y = random_point(s, rng);
                CHECK(distance(s, iso.apply_point(x), iso.apply_point(y)) ==
                      Approx(distance(s, x, y)).margin(1e-10));
            }
        }
    }
}

TEST_CASE("cross product orientation convention") {
    // (E1 × E2) = E3 at the base point in every space
    for (Space s : {Space::R3, Space::S3, Space::H3}) {
        Vec4 base = (s == Space::R3) ? Vec4{0, 0, 0, 0} : Vec4{1, 0, 0, 0};
        Vec4 c = cross_at(s, base, kBasis1, kBasis2);
        CHECK(max_abs(c - kBasis3) == 0.0);
    }
    // a × b is tangent and (a×b)•a = 0
    Rng rng(23);
    for (Space s : {Space::S3, Space::H3}) {
        for (int k = 0; k < 10; ++k) {
            Vec4 y = random_point(s, rng);
            Vec4 a = random_tangent(s, y, rng), b = random_tangent(s, y, rng);
            Vec4 c = cross_at(s, y, a, b);
            CHECK(tangency_residual(s, y, c) < 1e-12);
            CHECK(std::abs(metric_dot(s, c, a)) < 1e-12);
            CHECK(std::abs(metric_dot(s, c, b)) < 1e-12);
        }
    }
}
