#pragma once

// Independent numerical oracles for the closed-form hulls.
//
// Three machines live here. A barycentric-grid fixed point iterates
// lamination steps between compatible marked points and approximates the
// lamination hull from below (up to snapping noise). The polyconvex
// biconjugate of the penalty
//   f_C(V) = [V outside L^e] * (|det V| + |<C, V>|)
// is evaluated exactly: the dual supremum is a max of a piecewise-affine
// concave function over the rectangle [-1,1] x [-1,0], solved as a tiny
// linear program over the known anchor points {0, V1, V2, V3}. Randomized
// property campaigns drive both against the closed forms.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "triwell/hulls.hpp"
#include "triwell/plane.hpp"
#include "triwell/sym2.hpp"

namespace triwell {

// Triangular grid of barycentric triples (k1,k2,k3)/n, k1-major order.
struct BaryGrid {
    int n = 0;

    int size() const { return (n + 1) * (n + 2) / 2; }
    int rowOffset(int k1) const { return k1 * (n + 1) - k1 * (k1 - 1) / 2; }
    int index(int k1, int k2) const { return rowOffset(k1) + k2; }
    std::array<int, 3> point(int idx) const;
};

struct GridField {
    BaryGrid grid;
    std::vector<std::uint8_t> flags;
};

// Penalty family data, centered so that det(v[1]) = det(v[2]) = 0.
struct PenaltySpec {
    std::array<Sym2, 3> v;  // centered wells, class labeling
    Sym2 c;                 // det c < 0
    Sym2 u0;                // center in the original coordinates
    HullRegion hull;        // centered lamination hull
    WellKind kind = WellKind::TypeTwo;
    double scale = 1.0;  // max(1, max ||v_i||)
};

// Builds the spec for a type one / type two set. Strict sets get the
// in-plane bound matrix (tilted off the plane for type one so that the
// determinant stays negative); sets with a rank-one pair get the plane
// normal. Throws WrongClass otherwise.
PenaltySpec makePenaltySpec(const std::array<Sym2, 3>& wells);

// Penalty value at a centered point.
double evalPenalty(const PenaltySpec& spec, const Sym2& v);

// Dual rectangle E = [-1,1] x [-1,0] with scan resolution for the slow
// cross-check path.
struct DualRect {
    double k_min = -1.0, k_max = 1.0;
    double d_min = -1.0, d_max = 0.0;
    int grid_k = 161;
    int grid_d = 81;
};

// Closed-form inner supremum of the conjugate pair: max over the anchor
// points {0, v1, v2, v3} of k*<C,U> + dstar*det U. Throws DomainError
// outside the rectangle.
double supL(const PenaltySpec& spec, double k, double dstar);

// Slow maximizer of L(V, dstar, U) = <V,U> + dstar det U - f_C(U) over a
// sampled family of U including rank-one rays; cross-checks supL on the
// admissible set and diverges off it.
double supLBrute(const PenaltySpec& spec, const Sym2& v, double dstar,
                 int directions = 64);

// Exact biconjugate value at a centered point.
double biconjugate(const PenaltySpec& spec, const Sym2& v);
// Biconjugate at an uncentered point.
double biconjugateAt(const PenaltySpec& spec, const Sym2& u);
// Grid-scan lower bound used as a slow cross-check.
double biconjugateGrid(const PenaltySpec& spec, const Sym2& v,
                       const DualRect& rect = {});

inline double kernelTolerance(const PenaltySpec& spec) {
    return 1e-7 * spec.scale * spec.scale * spec.scale;
}

// Marks grid points of the centered simplex where the biconjugate
// vanishes within kernelTolerance; optionally reports the smallest value
// seen.
GridField kernelField(const PenaltySpec& spec, int resolution,
                      double* min_value = nullptr);

// Brute-force lamination hull: seeds the wells, then repeatedly marks
// the grid points nearest to the lambda-combinations of compatible
// marked pairs until a fixed point is reached.
GridField laminationFixedPoint(const std::array<Sym2, 3>& wells, int resolution,
                               int lambda_steps);

struct TranslationReport {
    double max_deviation = 0.0;
    int samples = 0;
    bool pass = false;
};

// Pipeline-level check that the biconjugate commutes with translations.
TranslationReport translationCheck(const std::array<Sym2, 3>& wells, const Sym2& m0,
                                   int samples, std::uint64_t seed);

struct SuiteResult {
    std::string name;
    std::uint64_t seed = 0;  // replay seed for this suite
    long checks = 0;
    long failures = 0;
    double max_err = 0.0;
    double min_val = 0.0;  // suite-specific extremum (e.g. min biconjugate)
    std::string detail;
};

// Individual randomized suites. Deterministic given their parameters.
SuiteResult trichotomySuite(std::uint64_t seed, int pairs);
SuiteResult detQNegativeSuite(std::uint64_t seed, int sets);
SuiteResult coefficientPatternSuite(std::uint64_t seed, int sets);
SuiteResult lineDotSuite(std::uint64_t seed, int triples, int samples);
SuiteResult labelingInvarianceSuite(std::uint64_t seed, int sets);
SuiteResult hbarWellsSuite(std::uint64_t seed, int sets);
SuiteResult rmk5EquivalenceSuite(std::uint64_t seed, int sets, int samples);
SuiteResult oracleBandSuite(std::uint64_t seed, int sets_per_class, int resolution,
                            int lambda_steps);
// Kernel sandwich on strict sets and kernel/lamination equality on
// rank-one sets; min_val carries the smallest biconjugate seen (scaled).
// The outer inclusion target for strict type-one sets is the cone
// section {det V >= 0} n C(U), which is what the biconjugate kernel
// actually equals there; `literal_hbar_outer` instead asserts the
// quadratic-bound region for both types (it is provably too small for
// type one; see the decisions ledger) and is used by the acceptance
// suite to exercise that criterion as written.
SuiteResult kernelSandwichSuite(std::uint64_t seed, int strict_sets,
                                int rank_one_sets, int resolution,
                                bool literal_hbar_outer = false);
SuiteResult equivarianceSuite(std::uint64_t seed, int transforms);
// Near-degenerate and ill-scaled well sets must classify cleanly or
// surface a typed error, never crash.
SuiteResult degeneracyFuzzSuite(std::uint64_t seed, int sets);

struct CampaignConfig {
    std::uint64_t seed = 0;
    int resolution = 60;
    int lambda_steps = 64;
    int pairs = 2000;
    int sets = 200;
    int sets_per_class = 6;
    int kernel_sets = 8;
    int equivalence_sets = 5;
    int equivalence_samples = 2000;
    int transforms = 5;
};

struct CampaignReport {
    CampaignConfig config;
    std::vector<SuiteResult> suites;
    bool pass = false;
};

CampaignReport propertyCampaign(const CampaignConfig& config);

// Closed-form membership flags for every grid point, used when comparing
// a field against a region.
std::vector<std::uint8_t> regionFlags(const HullRegion& region,
                                      const std::array<Sym2, 3>& wells,
                                      const BaryGrid& grid, double tol);

// Counts mismatches between two flag fields that are not explained by a
// boundary band: a disagreement at a point is allowed when the reference
// flags flip within `band` grid cells of it.
long bandViolations(const std::vector<std::uint8_t>& field,
                    const std::vector<std::uint8_t>& reference,
                    const BaryGrid& grid, int band);

}  // namespace triwell
