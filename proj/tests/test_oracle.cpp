#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "curvelink/families.hpp"
#include "curvelink/linking.hpp"
#include "curvelink/oracle.hpp"

using namespace curvelink;
using Catch::Approx;

namespace {

// Least-squares circle fit: minimize Σ(|p|² − 2p·c − k)² over (c, k); then
// every point should sit at the same distance from c.
double circle_fit_spread(const std::vector<Vec4>& pts) {
    double m[4][5] = {};
    for (const auto& p : pts) {
        double row[4] = {2 * p[1], 2 * p[2], 2 * p[3], 1.0};
        double rhs = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) m[i][j] += row[i] * row[j];
            m[i][4] += row[i] * rhs;
        }
    }
    // gaussian elimination
    for (int i = 0; i < 4; ++i) {
        int piv = i;
        for (int r = i + 1; r < 4; ++r)
            if (std::abs(m[r][i]) > std::abs(m[piv][i])) piv = r;
        std::swap(m[i], m[piv]);
        for (int r = i + 1; r < 4; ++r) {
            double f = m[r][i] / m[i][i];
            for (int c = i; c < 5; ++c) m[r][c] -= f * m[i][c];
        }
    }
    double sol[4];
    for (int i = 3; i >= 0; --i) {
        double s = m[i][4];
        for (int c = i + 1; c < 4; ++c) s -= m[i][c] * sol[c];
        sol[i] = s / m[i][i];
    }
    Vec4 center{0, sol[0], sol[1], sol[2]};
    double lo = 1e300, hi = 0.0;
    for (const auto& p : pts) {
        double r = norm4(p - center);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("perpendicular circles through each other's centers") {
    auto [a, b] = r3_hopf_pair();
    PolygonalCurveR3 p1 = project_to_r3(Space::R3, sample(a, 128));
    PolygonalCurveR3 p2 = project_to_r3(Space::R3, sample(b, 128));
    long long lk = crossing_linking(p1, p2);
    CHECK(std::llabs(lk) == 1);
}

TEST_CASE("split link counts zero") {
    Curve l1 = r3_circle({0, 0, 0, 0}, 0.3, kBasis1, kBasis2);
    Curve l2 = r3_circle({0, 2, 0, 0}, 0.3, kBasis2, kBasis3);
    CHECK(crossing_linking(project_to_r3(Space::R3, sample(l1, 64)),
                           project_to_r3(Space::R3, sample(l2, 64))) == 0);
}

TEST_CASE("hopf great circles project to a once-linked pair") {
    auto [c1, c2] = s3_hopf_pair();
    CurveSamples s1 = sample(c1, 128), s2 = sample(c2, 128);
    long long lk = oracle_linking(s1, s2);
    CHECK(std::llabs(lk) == 1);
    LinkResult integral = linking_number(LinkFormat::S3_LT, c1, c2, {64, 64});
    CHECK(lk == integral.rounded);
}

TEST_CASE("graph projection inverts the graph embedding exactly") {
    Curve base = r3_random_trig_curve(8);
    CurveSamples bs = sample(base, 64);
    Curve emb = embed_r3_curve(Space::H3, base, 1.0);
    PolygonalCurveR3 back = project_to_r3(Space::H3, sample(emb, 64));
    for (std::size_t i = 0; i < 64; ++i) CHECK(back.points[i] == bs.positions[i]);
}

TEST_CASE("stereographic projection sends great circles to round circles") {
    // a great circle avoiding the default pole region
    Curve c = great_circle(kBasis0, kBasis2);
    CurveSamples s = sample(c, 128);
    PolygonalCurveR3 img = project_to_r3(Space::S3, s, Vec4{0, 1, 0, 0});
    CHECK(circle_fit_spread(img.points) < 1e-6);
}

TEST_CASE("curve through the pole is rejected") {
    Curve c = great_circle(kBasis0, kBasis1);
    CurveSamples s = sample(c, 64);
    CHECK_THROWS_AS(project_to_r3(Space::S3, s, Vec4{1, 0, 0, 0}), precondition_error);
}

TEST_CASE("direction independence") {
    auto [a, b] = r3_torus_pair(2);
    PolygonalCurveR3 p1 = project_to_r3(Space::R3, sample(a, 128));
    PolygonalCurveR3 p2 = project_to_r3(Space::R3, sample(b, 128));
    long long base = crossing_linking(p1, p2);
    Rng rng(99);
    int accepted = 0;
    for (int k = 0; k < 20 && accepted < 10; ++k) {
        Vec4 dir{0, rng.normal(), rng.normal(), rng.normal()};
        try {
            CHECK(crossing_linking(p1, p2, dir) == base);
            ++accepted;
        } catch (const precondition_error&) {
            // non-generic draw; try another
        }
    }
    CHECK(accepted == 10);
}

TEST_CASE("sub-sampling stability") {
    for (int windings : {0, 1, 3}) {
        auto [a, b] = r3_torus_pair(windings);
        long long at256 = crossing_linking(project_to_r3(Space::R3, sample(a, 256)),
                                           project_to_r3(Space::R3, sample(b, 256)));
        long long at128 = crossing_linking(project_to_r3(Space::R3, sample(a, 128)),
                                           project_to_r3(Space::R3, sample(b, 128)));
        long long at64 = crossing_linking(project_to_r3(Space::R3, sample(a, 64)),
                                          project_to_r3(Space::R3, sample(b, 64)));
        CHECK(at256 == at128);
        CHECK(at128 == at64);
        CHECK(std::llabs(at256) == windings);
    }
}

TEST_CASE("reversing either curve negates the count") {
    auto [a, b] = r3_torus_pair(2);
    PolygonalCurveR3 p1 = project_to_r3(Space::R3, sample(a, 128));
    PolygonalCurveR3 p2 = project_to_r3(Space::R3, sample(b, 128));
    long long base = crossing_linking(p1, p2);
    CHECK(crossing_linking(p1.reversed(), p2) == -base);
    CHECK(crossing_linking(p1, p2.reversed()) == -base);
    CHECK(crossing_linking(p1.reversed(), p2.reversed()) == base);
}

TEST_CASE("intersecting curves are reported, not miscounted") {
    // circles in perpendicular planes through the origin share two exact
    // vertices; no direction is generic and the oracle must refuse
    Curve c1 = r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis2);
    Curve c2 = r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis3);
    PolygonalCurveR3 p1 = project_to_r3(Space::R3, sample(c1, 64));
    PolygonalCurveR3 p2 = project_to_r3(Space::R3, sample(c2, 64));
    CHECK_THROWS_AS(crossing_linking(p1, p2), precondition_error);
}
