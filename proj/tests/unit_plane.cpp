#include <doctest.h>

#include <random>

#include "triwell/generator.hpp"
#include "triwell/hulls.hpp"
#include "triwell/plane.hpp"
#include "triwell/verify.hpp"

using namespace triwell;

namespace {

// The type two fixture used throughout: U0 = diag(1, 0).
const std::array<Sym2, 3> kTypeTwoWells{diag(2.0, -1.0), diag(1.0, 1.0),
                                        diag(0.0, 0.0)};

}  // namespace

TEST_CASE("affine plane of the type two fixture") {
    const AffinePlane plane = affinePlane(kTypeTwoWells);
    CHECK(plane.span_dim == 2);
    // cross product of (-1,2,0) and (-2,1,0) points along (0,0,1)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(plane.normal.xx == doctest::Approx(0.0));
    CHECK(plane.normal.yy == doctest::Approx(0.0));
    CHECK(std::abs(plane.normal.xy) == doctest::Approx(inv_sqrt2));
    CHECK(norm(plane.normal) == doctest::Approx(1.0));
    for (const Sym2& w : kTypeTwoWells) {
        CHECK(inner(plane.normal, w - plane.base) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("degenerate spans") {
    const Sym2 e11 = outer({1.0, 0.0});
    CHECK(affinePlane({Sym2{}, e11, 2.0 * e11}).span_dim == 1);
    CHECK(affinePlane({Sym2{}, Sym2{}, Sym2{}}).span_dim == 0);
}

TEST_CASE("frame from the fixture normal") {
    const AffinePlane plane = affinePlane(kTypeTwoWells);
    const ConeFrame frame = frameFromNormal(plane);
    CHECK(norm(frame.ea - diag(0.0, 1.0)) <= 1e-12);
    CHECK(norm(frame.en - diag(1.0, 0.0)) <= 1e-12);
    CHECK(frame.cross_sq == doctest::Approx(1.0));
    CHECK(det(frame.ea) == doctest::Approx(0.0));
    CHECK(det(frame.en) == doctest::Approx(0.0));
    CHECK(inner(plane.normal, frame.ea) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inner(plane.normal, frame.en) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("frame from a trace-free diagonal normal") {
    AffinePlane plane;
    plane.span_dim = 2;
    plane.normal = (1.0 / std::sqrt(2.0)) * diag(1.0, -1.0);
    const ConeFrame frame = frameFromNormal(plane);
    CHECK(inner(plane.normal, frame.ea) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inner(plane.normal, frame.en) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(det(frame.ea) == doctest::Approx(0.0));
    CHECK(det(frame.en) == doctest::Approx(0.0));
    CHECK(frame.cross_sq > 0.5);
}

TEST_CASE("definite normals are rejected") {
    AffinePlane plane;
    plane.span_dim = 2;
    plane.normal = (1.0 / std::sqrt(2.0)) * identity();
    CHECK_THROWS_AS(frameFromNormal(plane), Error);
    try {
        frameFromNormal(plane);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NormalNotIndefinite);
    }
}

TEST_CASE("plane coordinates on the fixture frame") {
    const ConeFrame frame = frameFromNormal(affinePlane(kTypeTwoWells));
    const Sym2 origin = diag(1.0, 0.0);

    const PlaneCoords c1 = toPlaneCoords(diag(1.0, 1.0), origin, frame);
    CHECK(c1.xi == doctest::Approx(1.0));
    CHECK(c1.eta == doctest::Approx(0.0));

    const PlaneCoords c2 = toPlaneCoords(origin, origin, frame);
    CHECK(c2.xi == doctest::Approx(0.0));
    CHECK(c2.eta == doctest::Approx(0.0));

    const PlaneCoords c3 = toPlaneCoords(diag(2.0, -1.0), origin, frame);
    CHECK(c3.xi == doctest::Approx(-1.0));
    CHECK(c3.eta == doctest::Approx(1.0));

    // reconstruction
    const Sym2 rebuilt = fromPlaneCoords(origin, frame, c3);
    CHECK(norm(rebuilt - diag(2.0, -1.0)) <= 1e-12);

    // off-plane input
    CHECK_THROWS_AS(toPlaneCoords(Sym2{1.0, 0.0, 0.5}, origin, frame), Error);
}

TEST_CASE("U0 of the type two fixture") {
    const WellClass cls = classify(kTypeTwoWells);
    REQUIRE(cls.kind == WellKind::TypeTwo);
    const auto w = permuted(kTypeTwoWells, cls);
    const U0Result r = computeU0(w, cls.kind);
    CHECK(norm(r.u0 - diag(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(det(r.u0 - w[1])) <= 1e-12);
    CHECK(std::abs(det(r.u0 - w[2])) <= 1e-12);
    CHECK(r.inside);
    // barycentric coefficients recover U0 and match the printed formulas
    const Sym2 rebuilt =
        r.lambda[0] * w[0] + r.lambda[1] * w[1] + r.lambda[2] * w[2];
    CHECK(norm(rebuilt - r.u0) <= 1e-12);
    CHECK(r.lambda[0] + r.lambda[1] + r.lambda[2] == doctest::Approx(1.0));
    CHECK(r.lambda[0] == doctest::Approx(1.0 / 3.0));
    CHECK(r.lambda[1] == doctest::Approx(1.0 / 3.0));
    CHECK(r.lambda[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("printed barycentric formulas agree with the linear solve") {
    // lambda2 reads ((alpha - xi3) beta - (beta - eta3) alpha) / den; the
    // unique reading that sums to one is cross-checked on random sets.
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const WellKind kind = (i % 2 == 0) ? WellKind::TypeOne : WellKind::TypeTwo;
        const auto wells = randomTypeSet(kind, true, rng);
        const WellClass cls = classify(wells);
        if (cls.kind != kind) continue;
        const auto w = permuted(wells, cls);
        const ConeFrame frame = frameFromNormal(affinePlane(w));
        const PlaneCoords c2 = toPlaneCoords(w[1], w[0], frame);
        const PlaneCoords c3 = toPlaneCoords(w[2], w[0], frame);
        const double alpha = (std::abs(c2.xi) <= std::abs(c3.xi)) ? c2.xi : c3.xi;
        const double beta = (std::abs(c2.eta) <= std::abs(c3.eta)) ? c2.eta : c3.eta;
        const double den = c2.xi * c3.eta - c3.xi * c2.eta;
        const double l1 = ((alpha - c2.xi) * (beta - c3.eta) -
                           (alpha - c3.xi) * (beta - c2.eta)) / den;
        const double l2 = ((alpha - c3.xi) * beta - (beta - c3.eta) * alpha) / den;
        const double l3 = ((beta - c2.eta) * alpha - (alpha - c2.xi) * beta) / den;
        const U0Result r = computeU0(w, cls.kind);
        CHECK(l1 + l2 + l3 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.lambda[0] == doctest::Approx(l1).epsilon(1e-8));
        CHECK(r.lambda[1] == doctest::Approx(l2).epsilon(1e-8));
        CHECK(r.lambda[2] == doctest::Approx(l3).epsilon(1e-8));
    }
}

TEST_CASE("U0 commutes with translation and scaling") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; ++i) {
        const WellKind kind = (i % 2 == 0) ? WellKind::TypeOne : WellKind::TypeTwo;
        const auto wells = randomTypeSet(kind, true, rng);
        const WellClass cls = classify(wells);
        if (cls.kind != kind) continue;
        const auto w = permuted(wells, cls);
        const U0Result base = computeU0(w, cls.kind);

        const Sym2 shift = randomSym2(rng, 5.0);
        std::array<Sym2, 3> moved = w;
        for (auto& x : moved) x = x + shift;
        const U0Result translated = computeU0(moved, cls.kind);
        CHECK(norm(translated.u0 - (base.u0 + shift)) <= 1e-9 * std::max(1.0, norm(shift)));

        std::array<Sym2, 3> scaled = w;
        for (auto& x : scaled) x = 2.0 * x;
        const U0Result doubled = computeU0(scaled, cls.kind);
        CHECK(norm(doubled.u0 - 2.0 * base.u0) <= 1e-9 * std::max(1.0, norm(base.u0)));
    }
}

TEST_CASE("computeU0 rejects other classes") {
    CHECK_THROWS_AS(computeU0(kTypeTwoWells, WellKind::AllCompatible), Error);
}

TEST_CASE("exterior U0 fixture") {
    // U2, U3 rank-one compatible; the line through them meets the
    // rank-one cone of U1 at t0 = 2 outside [0,1].
    const std::array<Sym2, 3> wells{diag(0.0, 2.0), diag(2.0, 0.0), diag(2.0, 1.0)};
    const ExteriorU0Result r = exteriorU0(wells);
    CHECK(r.t0 == doctest::Approx(2.0));
    CHECK(norm(r.u0 - diag(2.0, 2.0)) <= 1e-12);
    CHECK(std::abs(det(r.u0 - wells[0])) <= 1e-12);
    CHECK(std::abs(det(r.u0 - wells[1])) <= 1e-12);
    CHECK(std::abs(det(r.u0 - wells[2])) <= 1e-12);
    CHECK((r.t0 < 0.0 || r.t0 > 1.0));
}

TEST_CASE("exterior U0 degenerate denominator") {
    // all three wells share the first diagonal entry: collinear images
    const std::array<Sym2, 3> wells{diag(2.0, 5.0), diag(2.0, 0.0), diag(2.0, 1.0)};
    CHECK_THROWS_AS(exteriorU0(wells), Error);
    try {
        exteriorU0(wells);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegeneratePlane);
    }
}

TEST_CASE("segment rank-one point") {
    SUBCASE("quadratic with root 1/2") {
        const auto t = segmentRankOnePoint(diag(1.0, -1.0), diag(-1.0, 0.0), Sym2{});
        REQUIRE(t.has_value());
        CHECK(*t == doctest::Approx(0.5));
        // substitution check
        const Sym2 p = *t * diag(1.0, -1.0) + (1.0 - *t) * diag(-1.0, 0.0);
        CHECK(det(p) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("degenerate A == B") {
        const Sym2 b = diag(1.0, 1.0);
        CHECK_FALSE(segmentRankOnePoint(b, b, Sym2{}).has_value());
    }
    SUBCASE("root at zero excluded") {
        // P = B makes t = 0 a root; only the other root counts.
        const Sym2 a = diag(1.0, -1.0);
        const Sym2 b = diag(2.0, 1.0);
        const auto t = segmentRankOnePoint(a, b, b);
        if (t) {
            const Sym2 p = *t * a + (1.0 - *t) * b - b;
            CHECK(det(p) == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(*t > 0.0);
        }
    }
}

TEST_CASE("segment rank-one points against the U0 construction") {
    // On a strict type two set, the segments from U1 to U2 and U3 each
    // cross a rank-one line through U0 at an interior parameter.
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const auto wells = randomTypeSet(WellKind::TypeTwo, true, rng);
        const WellClass cls = classify(wells);
        if (cls.kind != WellKind::TypeTwo) continue;
        const auto w = permuted(wells, cls);
        const U0Result u0 = computeU0(w, cls.kind);
        for (int j : {1, 2}) {
            const auto t = segmentRankOnePoint(w[0], w[j], u0.u0);
            REQUIRE(t.has_value());
            const Sym2 p = *t * w[0] + (1.0 - *t) * w[j] - u0.u0;
            const double scale = std::max(1.0, normSq(w[0] - w[j]));
            CHECK(std::abs(det(p)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("normals of generated mixed-type sets are indefinite") {
    const SuiteResult r = detQNegativeSuite(102, 1000);
    CHECK(r.checks == 1000);
    CHECK(r.failures == 0);
    CHECK(r.max_err < 0.0);
}

TEST_CASE("U0 coordinates obey the sign patterns") {
    const SuiteResult r = coefficientPatternSuite(103, 500);
    CHECK(r.checks == 500);
    CHECK(r.failures == 0);
}

TEST_CASE("points of the hull stay incompatible with the isolated well") {
    const SuiteResult r = lineDotSuite(104, 100, 100);
    CHECK(r.checks > 5000);
    CHECK(r.failures == 0);
}
