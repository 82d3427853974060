#include <doctest.h>

#include <numeric>
#include <random>

#include "triwell/generator.hpp"
#include "triwell/hulls.hpp"
#include "triwell/verify.hpp"

using namespace triwell;

namespace {

const std::array<Sym2, 3> kTypeTwoWells{diag(2.0, -1.0), diag(1.0, 1.0),
                                        diag(0.0, 0.0)};
const std::array<Sym2, 3> kTypeOneWells{diag(1.0, 1.0), diag(0.0, -1.0),
                                        diag(-1.0, 0.0)};
const std::array<Sym2, 3> kIncompatibleWells{Sym2{}, diag(1.0, 1.0), diag(3.0, 2.0)};

long countMarks(const GridField& field) {
    return std::accumulate(field.flags.begin(), field.flags.end(), 0L);
}

}  // namespace

TEST_CASE("barycentric grid indexing") {
    const BaryGrid grid{10};
    CHECK(grid.size() == 66);
    int expected = 0;
    for (int k1 = 0; k1 <= 10; ++k1) {
        for (int k2 = 0; k2 <= 10 - k1; ++k2) {
            CHECK(grid.index(k1, k2) == expected);
            const auto pt = grid.point(expected);
            CHECK(pt[0] == k1);
            CHECK(pt[1] == k2);
            CHECK(pt[2] == 10 - k1 - k2);
            ++expected;
        }
    }
}

TEST_CASE("penalty spec of the type two fixture") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    CHECK(norm(spec.u0 - diag(1.0, 0.0)) <= 1e-12);
    CHECK(norm(spec.c - diag(-1.0, 1.0)) <= 1e-12);
    CHECK(det(spec.c) < 0.0);
    CHECK(std::abs(det(spec.v[1])) <= 1e-12);
    CHECK(std::abs(det(spec.v[2])) <= 1e-12);
}

TEST_CASE("penalty spec of a strict type one set keeps det C negative") {
    const PenaltySpec spec = makePenaltySpec(kTypeOneWells);
    CHECK(det(spec.c) < 0.0);
    CHECK(inner(spec.c, spec.v[1]) > 0.0);
    CHECK(inner(spec.c, spec.v[1]) ==
          doctest::Approx(inner(spec.c, spec.v[2])).epsilon(1e-9));
    CHECK(inner(spec.c, spec.v[0]) <= 1e-12);
}

TEST_CASE("penalty values") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    // wells lie in the hull
    CHECK(evalPenalty(spec, spec.v[1]) == 0.0);
    // far along C: positive
    CHECK(evalPenalty(spec, 10.0 * spec.c) > 0.0);
    // The kernel of f_C is larger than the hull: points on the rank-one
    // lines of the plane normal to C are charged nothing even though
    // they are far outside the hull.
    AffinePlane c_plane;
    c_plane.span_dim = 2;
    c_plane.normal = (1.0 / norm(spec.c)) * spec.c;
    const ConeFrame c_frame = frameFromNormal(c_plane);
    const Sym2 v_free = 7.0 * c_frame.ea;
    CHECK(std::abs(det(v_free)) <= 1e-12);
    CHECK(std::abs(inner(spec.c, v_free)) <= 1e-9);
    CHECK_FALSE(regionContains(spec.hull, v_free, 1e-9));
    CHECK(evalPenalty(spec, v_free) <= 1e-9);
}

TEST_CASE("closed-form conjugate maximum over the anchors") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    CHECK(supL(spec, 0.0, 0.0) == doctest::Approx(0.0));
    CHECK(supL(spec, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(supL(spec, 1.0, -1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(supL(spec, 1.5, 0.0), Error);
    CHECK_THROWS_AS(supL(spec, 0.0, 0.5), Error);
    try {
        supL(spec, 0.0, -2.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainError);
    }
}

TEST_CASE("slow maximizer agrees with the closed form on the admissible set") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ks(-0.95, 0.95);
    std::uniform_real_distribution<double> ds(-1.0, 0.0);
    for (int i = 0; i < 20; ++i) {
        const double k = ks(rng);
        const double d = ds(rng);
        const double closed = supL(spec, k, d);
        const double brute = supLBrute(spec, k * spec.c, d);
        // anchors are part of the sample, so the brute value matches
        CHECK(brute == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("slow maximizer diverges off the admissible set") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    const double cap = 1e6 * spec.scale * spec.scale;
    // |k| > 1
    CHECK(supLBrute(spec, 2.0 * spec.c, 0.0) > cap);
    // V not parallel to C
    const Sym2 v_indep = identity();
    CHECK(supLBrute(spec, v_indep, 0.0) > cap);
    // dstar < -1
    CHECK(supLBrute(spec, 0.5 * spec.c, -2.0) > cap);
}

TEST_CASE("biconjugate values on the fixture") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    SUBCASE("wells and the center are in the kernel") {
        CHECK(biconjugate(spec, spec.v[0]) <= 1e-12);
        CHECK(biconjugate(spec, spec.v[1]) <= 1e-12);
        CHECK(biconjugate(spec, spec.v[2]) <= 1e-12);
        CHECK(biconjugate(spec, Sym2{}) <= 1e-12);
        CHECK(biconjugate(spec, spec.v[0]) >= 0.0);
    }
    SUBCASE("positive far outside the hull") {
        CHECK(biconjugate(spec, 10.0 * spec.c) > 0.0);
        CHECK(biconjugate(spec, 20.0 * spec.c) >
              biconjugate(spec, 10.0 * spec.c));
    }
    SUBCASE("grows linearly along positive-determinant directions") {
        // det V > 0 keeps the dual optimum at dstar = 0, so only the
        // linear <C, V - V2> term survives.
        const Sym2 dir = diag(1.0, 2.0);
        REQUIRE(det(dir) > 0.0);
        REQUIRE(inner(spec.c, dir) > 0.0);
        const double f1 = biconjugate(spec, 10.0 * dir);
        const double f2 = biconjugate(spec, 20.0 * dir);
        CHECK(f1 > 0.0);
        CHECK(f2 > 1.5 * f1);
        CHECK(f2 < 2.5 * f1);
    }
    SUBCASE("never negative") {
        std::mt19937_64 rng(42);
        for (int i = 0; i < 500; ++i) {
            CHECK(biconjugate(spec, randomSym2(rng, 5.0)) >= 0.0);
        }
    }
}

TEST_CASE("rank-one specs reduce to the plane-distance closed form") {
    // With the penalty direction normal to the plane and all three
    // centered wells rank-one, the biconjugate collapses to
    // |<V, C>| + max(0, -det V); this validates the dual LP against an
    // independent closed form.
    std::mt19937_64 rng(44);
    for (int i = 0; i < 20; ++i) {
        const WellKind kind = (i % 2 == 0) ? WellKind::TypeOne : WellKind::TypeTwo;
        const auto wells = randomTypeSet(kind, false, rng);
        const PenaltySpec spec = makePenaltySpec(wells);
        REQUIRE(std::abs(det(spec.v[0])) <= 1e-9 * spec.scale * spec.scale);
        for (int s = 0; s < 40; ++s) {
            const Sym2 v = randomSym2(rng, 3.0);
            const double expected =
                std::abs(inner(v, spec.c)) + std::max(0.0, -det(v));
            const double got = biconjugate(spec, v);
            const double mag = std::max(1.0, expected);
            CHECK(got == doctest::Approx(expected).epsilon(1e-9).scale(mag));
        }
    }
}

TEST_CASE("slow maximizer diverges off the admissible set for type one") {
    const PenaltySpec spec = makePenaltySpec(kTypeOneWells);
    const double cap = 1e6 * spec.scale * spec.scale;
    CHECK(supLBrute(spec, 1.5 * spec.c, -0.5) > cap);
    CHECK(supLBrute(spec, identity(), 0.0) > cap);
    CHECK(supLBrute(spec, 0.25 * spec.c, -1.5) > cap);
}

TEST_CASE("exact biconjugate dominates the dual grid scan") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 6; ++i) {
        const WellKind kind = (i % 2 == 0) ? WellKind::TypeOne : WellKind::TypeTwo;
        const auto wells = randomTypeSet(kind, true, rng);
        const PenaltySpec spec = makePenaltySpec(wells);
        for (int s = 0; s < 25; ++s) {
            const Sym2 v = randomSym2(rng, 3.0);
            const double exact = biconjugate(spec, v);
            const double scanned = biconjugateGrid(spec, v);
            double mag = std::max(1.0, std::abs(exact));
            CHECK(exact >= scanned - 1e-9 * mag);
            CHECK(exact - scanned <= 0.05 * mag);
        }
    }
}

TEST_CASE("kernel field of the type two fixture matches the bound region") {
    const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
    const int n = 99;
    const GridField kernel = kernelField(spec, n);

    const WellClass cls = classify(kTypeTwoWells);
    const OuterBound bound = outerBound(kTypeTwoWells, cls);
    const HullRegion centered = translateRegion(bound.region, -spec.u0);
    const auto outer_flags = regionFlags(centered, spec.v, kernel.grid, 1e-9);
    CHECK(bandViolations(kernel.flags, outer_flags, kernel.grid, 1) == 0);

    // all three wells marked
    CHECK(kernel.flags[kernel.grid.index(n, 0)] == 1);
    CHECK(kernel.flags[kernel.grid.index(0, n)] == 1);
    CHECK(kernel.flags[kernel.grid.index(0, 0)] == 1);
    // the barycenter maps to the centered origin, which is in the kernel
    CHECK(kernel.flags[kernel.grid.index(n / 3, n / 3)] == 1);
}

TEST_CASE("lamination fixed point: pairwise incompatible wells stay isolated") {
    for (int n : {20, 60}) {
        const GridField field = laminationFixedPoint(kIncompatibleWells, n, 64);
        CHECK(countMarks(field) == 3);
    }
}

TEST_CASE("lamination fixed point: type one fills the segment only") {
    const int n = 60;
    const GridField field = laminationFixedPoint(kTypeOneWells, n, 64);
    const WellClass cls = classify(kTypeOneWells);
    const HullRegion region = laminationHull(kTypeOneWells, cls);
    const auto ref = regionFlags(region, kTypeOneWells, field.grid, 1e-9);
    CHECK(bandViolations(field.flags, ref, field.grid, 2) == 0);
    // thin set: well below any areal fill
    CHECK(countMarks(field) < 4 * (n + 1));
}

TEST_CASE("lamination fixed point: type two fills the two triangles") {
    const int n = 60;
    const GridField field = laminationFixedPoint(kTypeTwoWells, n, 64);
    const WellClass cls = classify(kTypeTwoWells);
    const HullRegion region = laminationHull(kTypeTwoWells, cls);
    const auto ref = regionFlags(region, kTypeTwoWells, field.grid, 1e-9);
    CHECK(bandViolations(field.flags, ref, field.grid, 2) == 0);
    CHECK(countMarks(field) > (n * n) / 8);
}

TEST_CASE("lamination fixed point on rank-one degenerate hulls") {
    // The closed form keeps its two-triangle shape when one triangle
    // collapses; the oracle must agree within the band.
    std::mt19937_64 rng(45);
    for (int i = 0; i < 8; ++i) {
        const WellKind kind = (i % 2 == 0) ? WellKind::TypeOne : WellKind::TypeTwo;
        const auto wells = randomTypeSet(kind, false, rng);
        const WellClass cls = classify(wells);
        REQUIRE_FALSE(cls.rank_one_pairs.empty());
        const HullRegion region = laminationHull(wells, cls);
        const GridField field = laminationFixedPoint(wells, 60, 64);
        const auto ref = regionFlags(region, wells, field.grid, 1e-9);
        CHECK(bandViolations(field.flags, ref, field.grid, 2) == 0);
    }
}

TEST_CASE("translation check") {
    SUBCASE("zero shift is exact") {
        const TranslationReport r = translationCheck(kTypeTwoWells, Sym2{}, 50, 7);
        CHECK(r.pass);
        CHECK(r.max_deviation <= 1e-12);
    }
    SUBCASE("generic shift") {
        const TranslationReport r =
            translationCheck(kTypeTwoWells, diag(5.0, -3.0), 100, 8);
        CHECK(r.pass);
    }
    SUBCASE("centering shift") {
        const PenaltySpec spec = makePenaltySpec(kTypeTwoWells);
        const TranslationReport r = translationCheck(kTypeTwoWells, -spec.u0, 100, 9);
        CHECK(r.pass);
    }
}

TEST_CASE("kernel sandwich on a small campaign") {
    const SuiteResult r = kernelSandwichSuite(109, 4, 4, 60);
    CHECK(r.checks == 8);
    CHECK(r.failures == 0);
    CHECK(r.min_val >= -1e-9);
}

TEST_CASE("oracle band suite on a small campaign") {
    const SuiteResult r = oracleBandSuite(110, 2, 48, 64);
    CHECK(r.checks == 8);
    CHECK(r.failures == 0);
}

TEST_CASE("property campaign aggregates to a pass") {
    CampaignConfig config;
    config.seed = 5;
    config.resolution = 40;
    config.lambda_steps = 32;
    config.pairs = 500;
    config.sets = 60;
    config.sets_per_class = 2;
    config.kernel_sets = 2;
    config.equivalence_sets = 2;
    config.equivalence_samples = 500;
    config.transforms = 4;
    const CampaignReport report = propertyCampaign(config);
    CHECK(report.pass);
    CHECK(report.suites.size() == 11);
    for (const SuiteResult& s : report.suites) {
        CHECK(s.failures == 0);
    }
}

TEST_CASE("degenerate and ill-scaled inputs never crash") {
    const SuiteResult r = degeneracyFuzzSuite(111, 400);
    CHECK(r.checks == 400);
    CHECK(r.failures == 0);
}
