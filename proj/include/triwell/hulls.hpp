#pragma once

// Closed-form hull machinery for three linearized elastic wells.
//
// Classification counts incompatible pairs: none (the convex hull is
// exact), all three (the wells are isolated), exactly two through a
// distinguished well (type one) or exactly one (type two). For the two
// mixed types, the symmetric lamination convex hull is explicit in terms
// of the wells and the matrix U0 that is simultaneously rank-one
// compatible with the distinguished pair. The outer bound on the
// quasiconvex hull is the sublevel region of the quadratic
//   hbar(V) = <C, V - V2> det V1 - <C, V1 - V2> det V
// inside the convex hull, with C constant on the incompatible pair.

#include <array>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "triwell/plane.hpp"
#include "triwell/sym2.hpp"

namespace triwell {

struct WellClass {
    WellKind kind = WellKind::DegenerateSpan;
    // permuted(i) = wells[perm[i]] carries the labeling of the class
    // definition: type one has the doubly incompatible well first, type
    // two the doubly compatible one.
    std::array<int, 3> perm{0, 1, 2};
    // det(U1'-U2'), det(U1'-U3'), det(U2'-U3') in permuted labeling.
    std::array<double, 3> dets{};
    // pairs of distinct wells with vanishing determinant, original
    // 0-based indices, i < j
    std::vector<std::pair<int, int>> rank_one_pairs;
};

// Negative tol selects the per-pair determinant tolerance policy.
WellClass classify(const std::array<Sym2, 3>& wells, double tol = -1.0);

inline std::array<Sym2, 3> permuted(const std::array<Sym2, 3>& wells,
                                    const WellClass& cls) {
    return {wells[cls.perm[0]], wells[cls.perm[1]], wells[cls.perm[2]]};
}

struct PointPiece {
    Sym2 p;
};

struct SegmentPiece {
    Sym2 a, b;
};

struct TrianglePiece {
    Sym2 a, b, c;
};

// { U in triangle(corners) : hbar(U - u0) >= 0 } with hbar built from
// (c, v1, v2); the boundary curve is a hyperbola branch in frame
// coordinates.
struct CurvedPatchPiece {
    std::array<Sym2, 3> corners;
    Sym2 u0;
    Sym2 c;
    Sym2 v1;
    Sym2 v2;
};

using HullPiece = std::variant<PointPiece, SegmentPiece, TrianglePiece, CurvedPatchPiece>;

struct HullRegion {
    std::vector<HullPiece> pieces;
};

// Point-in-union test; tol is relative and scaled internally by the
// magnitudes involved.
bool regionContains(const HullRegion& region, const Sym2& u, double tol);

HullRegion translateRegion(const HullRegion& region, const Sym2& shift);

// Symmetric lamination convex hull:
//   type one        -> {U1} union segment(U2, U3)
//   type two        -> triangle(U0,U1,U2) union triangle(U0,U1,U3)
//   all compatible  -> triangle(U1, U2, U3)
//   all incompatible-> three isolated points
HullRegion laminationHull(const std::array<Sym2, 3>& wells, const WellClass& cls);

// The bound matrix of the quadratic outer bound, for wells centered so
// that det V2 = det V3 = 0. Normalized so that <C, V2> = <C, V3> > 0
// whenever that inner product is nonzero. Throws DegeneratePlane when
// the three matrices are affinely dependent.
Sym2 boundMatrixC(const Sym2& v1, const Sym2& v2, const Sym2& v3);

inline double hbar(const Sym2& v, const Sym2& v1, const Sym2& v2, const Sym2& c) {
    return inner(c, v - v2) * det(v1) - inner(c, v1 - v2) * det(v);
}

// Coefficients of the plane form h(x,y) = xy*A + x*B + y*D + c0 of the
// bound in frame coordinates; hbar = s * |a x n|^2 * h with s = +1 for
// type two and -1 for type one.
struct HCoeffs {
    double a_xy = 0.0;
    double b_x = 0.0;
    double d_y = 0.0;
    double c0 = 0.0;
};

struct OuterBound {
    Sym2 c;
    Sym2 u0;
    std::array<Sym2, 3> v;  // permuted wells centered at u0
    HCoeffs h;
    HullRegion region;  // { U in C(U) : hbar(U - u0) >= 0 }
};

// Quadratic outer bound on the quasiconvex hull for strict type one /
// type two sets. Throws WrongClass for other kinds and RankOnePresent
// when a rank-one pair exists (the hulls then coincide and the bound is
// not needed).
OuterBound outerBound(const std::array<Sym2, 3>& wells, const WellClass& cls);

enum class HullStatus {
    ExactEqualsLamination,
    ExactConvex,
    ExactWells,
    BoundOnly,
};

const char* hullStatusName(HullStatus status) noexcept;

struct QcHull {
    HullStatus status = HullStatus::BoundOnly;
    WellClass cls;
    HullRegion inner;
    HullRegion outer;
    std::optional<Sym2> u0;           // present for type one / type two
    std::optional<OuterBound> bound;  // present for BoundOnly
};

QcHull quasiconvexHull(const std::array<Sym2, 3>& wells);

}  // namespace triwell
