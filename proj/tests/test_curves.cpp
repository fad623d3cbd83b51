#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <sstream>

#include "curvelink/curve_json.hpp"
#include "curvelink/curves.hpp"
#include "curvelink/families.hpp"

using namespace curvelink;
using Catch::Approx;

TEST_CASE("great circle construction") {
    Curve c = great_circle(kBasis0, kBasis1);
    CHECK(max_abs(c.position(0.0) - kBasis0) == 0.0);
    CHECK(max_abs(c.velocity(0.0) - kBasis1) == 0.0);
    CHECK(c.period() == Approx(2 * kPi));

    CurveSamples s = sample(c, 256);
    for (const auto& p : s.positions)
        CHECK(std::abs(dot4(p, p) - 1.0) < 1e-14);
    // antipodal at parameter offset π
    for (double t : {0.3, 1.7, 4.4})
        CHECK(distance(Space::S3, c.position(t), c.position(t + kPi)) ==
              Approx(kPi).margin(1e-9));

    CHECK_THROWS_AS(great_circle(kBasis0, 2.0 * kBasis1), precondition_error);
    CHECK_THROWS_AS(great_circle(kBasis0, kBasis0), precondition_error);
}

TEST_CASE("embeddings of R3 curves") {
    // the origin is a fixed point of both maps
    Curve tiny = r3_circle({0, 0, 0, 0}, 0.5, kBasis1, kBasis2);
    CHECK(max_abs(detail::stereo_embed({0, 0, 0, 0}) - Vec4{1, 0, 0, 0}) == 0.0);
    CHECK(max_abs(detail::graph_embed({0, 0, 0, 0}) - Vec4{1, 0, 0, 0}) == 0.0);

    // unit circle embedded in S³ lies exactly on the sphere
    Curve circ = r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis2);
    Curve on_s3 = embed_r3_curve(Space::S3, circ, 1.0);
    CurveSamples s = sample(on_s3, 256);
    for (const auto& p : s.positions) CHECK(std::abs(dot4(p, p) - 1.0) < 1e-14);
    CHECK(validate(s).pass);

    // graph embedding round trip is exact
    Curve on_h3 = embed_r3_curve(Space::H3, circ, 0.7);
    CurveSamples sh = sample(on_h3, 64);
    for (std::size_t i = 0; i < sh.size(); ++i) {
        Vec4 q = 0.7 * circ.position(i * circ.period() / 64.0);
        CHECK(sh.positions[i][1] == q[1]);
        CHECK(sh.positions[i][2] == q[2]);
        CHECK(sh.positions[i][3] == q[3]);
    }
    CHECK(validate(sh).pass);

    CHECK_THROWS_AS(embed_r3_curve(Space::S3, circ, 2.0), precondition_error);
    CHECK_THROWS_AS(embed_r3_curve(Space::S3, circ, -1.0), precondition_error);

    // velocities follow the chain rule: compare against central differences
    for (Curve k : {on_s3, on_h3}) {
        double h = 1e-6;
        for (double t : {0.4, 2.0, 5.1}) {
            Vec4 fd = (k.position(t + h) - k.position(t - h)) / (2 * h);
            CHECK(max_abs(fd - k.velocity(t)) < 1e-8);
        }
    }
}

TEST_CASE("sampling grids") {
    Curve c = great_circle(kBasis0, kBasis1);
    CHECK_THROWS_AS(sample(c, 4), precondition_error);

    CurveSamples s8 = sample(c, 8);
    for (int i = 0; i < 8; ++i) {
        double t = 2.0 * kPi * i / 8.0;
        CHECK(max_abs(s8.positions[i] - Vec4{std::cos(t), std::sin(t), 0, 0}) < 1e-15);
    }
    // tangency of analytic velocities
    CurveSamples s = sample(c, 64);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(dot4(s.positions[i], s.velocities[i])) < 1e-10);

    // doubling leaves shared parameters bit-identical
    CurveSamples s128 = sample(c, 128), s256 = sample(c, 256);
    for (int i = 0; i < 128; ++i) CHECK(s128.positions[i] == s256.positions[2 * i]);
}

TEST_CASE("polygonal velocities approach analytic ones at 4th order") {
    Curve circ = embed_r3_curve(Space::S3, r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis2), 0.8);
    auto worst_at = [&](std::size_t n) {
        CurveSamples exact = sample(circ, n);
        Curve poly = Curve::polygonal(Space::S3, exact.positions);
        CurveSamples approx = sample(poly, n);
        CHECK(validate(approx).pass);
        // polygonal parameter is the index; d/d(index) = (ds/d(index))·d/ds
        double rescale = exact.parameter_step / approx.parameter_step;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, max_abs(approx.velocities[i] / rescale -
                                            exact.velocities[i]));
        return worst;
    };
    double e64 = worst_at(64), e128 = worst_at(128), e256 = worst_at(256);
    CHECK(e64 < 5e-6);
    CHECK(e128 < 1e-6);  // relative: velocities here have norm ≈ 1
    CHECK(e256 < 1e-7);
    CHECK(e128 < e64 / 12.0);  // 4th-order decay
}

TEST_CASE("min pair distance") {
    auto [a, b] = s3_hopf_pair();
    CHECK(min_pair_distance(sample(a, 64), sample(b, 64)) == Approx(kPi / 2).margin(1e-12));
    CurveSamples sa = sample(a, 64);
    CHECK(min_pair_distance(sa, sa) == 0.0);

    // separated small loops at a known distance
    double d = 0.8;
    Curve l1 = r3_circle({0, 0, 0, 0}, 0.1, kBasis1, kBasis2);
    Curve l2 = r3_circle({0, 0.2 + d, 0, 0}, 0.1, kBasis1, kBasis2);
    double got = min_pair_distance(sample(l1, 128), sample(l2, 128));
    CHECK(got == Approx(d).margin(1e-3));
}

TEST_CASE("validation catches forced violations") {
    Curve c = great_circle(kBasis0, kBasis2);
    CurveSamples s = sample(c, 64);
    CHECK(validate(s).pass);

    CurveSamples off = s;
    for (auto& p : off.positions) p = p * 1.01;
    ValidationReport rep = validate(off);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.checks[0].pass);  // on_manifold

    Curve h = embed_r3_curve(Space::H3, r3_circle({0, 0, 0, 0}, 1.0, kBasis1, kBasis2), 0.5);
    CurveSamples sh = sample(h, 64);
    sh.positions[3][0] = -sh.positions[3][0];  // wrong sheet
    CHECK_FALSE(validate(sh).pass);
}

TEST_CASE("validation residuals are isometry invariant") {
    Curve h = embed_r3_curve(Space::H3, r3_random_trig_curve(4), 0.5);
    CurveSamples s = sample(h, 64);
    ValidationReport before = validate(s);
    CurveSamples moved = s.transformed(random_isometry(Space::H3, 9));
    ValidationReport after = validate(moved);
    REQUIRE(before.pass);
    REQUIRE(after.pass);
    for (std::size_t i = 0; i < before.checks.size(); ++i)
        CHECK(after.checks[i].residual ==
              Approx(before.checks[i].residual).margin(1e-10));
}

TEST_CASE("orientation reversal round trip") {
    Curve c = embed_r3_curve(Space::S3, r3_random_trig_curve(2), 0.6);
    CurveSamples s = sample(c, 64);
    CurveSamples r = s.reversed();
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(r.positions[i] == s.positions[s.size() - 1 - i]);
        CHECK(r.velocities[i] == -s.velocities[s.size() - 1 - i]);
    }
    CurveSamples rr = r.reversed();
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(rr.positions[i] == s.positions[i]);
        CHECK(rr.velocities[i] == s.velocities[i]);
    }
    // sampling a reversed curve gives a reversed sampling
    CurveSamples sr = sample(c.reversed(), 64);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(sr.positions[i] == r.positions[i]);
}

TEST_CASE("embedding is injective on simple curves") {
    for (Space target : {Space::S3, Space::H3}) {
        Curve e = embed_r3_curve(target, r3_random_trig_curve(6), 0.5);
        CurveSamples s = sample(e, 128);
        double closest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                std::size_t gap = std::min(j - i, s.size() - (j - i));
                if (gap < 3) continue;  // skip parameter coincidence
                closest = std::min(closest, distance(target, s.positions[i], s.positions[j]));
            }
        CHECK(closest > 1e-4);
    }
}

TEST_CASE("curve json round trip and schema errors") {
    json gc = great_circle_to_json(kBasis2, kBasis3, -1);
    Curve c = curve_from_json(gc);
    CHECK(c.space() == Space::S3);
    CHECK(c.orientation() == -1);
    CHECK(max_abs(c.position(0.0) - kBasis2) == 0.0);

    CurveSamples s = sample(embed_r3_curve(Space::H3, r3_random_trig_curve(3), 0.5), 32);
    json poly = polygonal_to_json(Space::H3, s.positions);
    Curve p = curve_from_json(poly);
    CHECK(p.points().size() == 32);
    CHECK(validate(sample(p, 32)).pass);

    // embedded_r3 with a nested polygonal base
    CurveSamples base = sample(r3_random_trig_curve(5), 64);
    json emb = embedded_to_json(Space::S3, 0.5, polygonal_to_json(Space::R3, base.positions));
    Curve ec = curve_from_json(emb);
    CHECK(ec.space() == Space::S3);
    CHECK(validate(sample(ec, 64)).pass);

    CHECK_THROWS_AS(curve_from_json(json{{"space", "s3"}, {"kind", "nonsense"}}),
                    precondition_error);
    CHECK_THROWS_AS(space_from_string("k3"), precondition_error);
    json bad = gc;
    bad["orientation"] = 2;
    CHECK_THROWS_AS(curve_from_json(bad), precondition_error);
    // off-manifold polygonal points are rejected
    json off = polygonal_to_json(Space::S3, std::vector<Vec4>(32, Vec4{2, 0, 0, 0}));
    CHECK_THROWS_AS(curve_from_json(off), precondition_error);
}
