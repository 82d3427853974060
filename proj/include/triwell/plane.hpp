#pragma once

// Geometry of the affine plane through a three-well set.
//
// When the wells span a plane of codimension one with indefinite normal
// Q = nu * (a (.) n), the directions a_perp (x) a_perp and
// n_perp (x) n_perp are two independent rank-one matrices orthogonal to
// Q; they serve as a coordinate frame in which determinants of in-plane
// differences factor as det = xi * eta * |a x n|^2. The matrix U0 sits
// at the intersection of the two rank-one lines through the pair of
// wells it is rank-one compatible with.

#include <array>
#include <optional>

#include "triwell/sym2.hpp"

namespace triwell {

struct AffinePlane {
    Sym2 base;        // a point on the plane, conventionally the first well
    Sym2 normal;      // unit Frobenius norm when span_dim == 2, zero otherwise
    int span_dim = 0;  // affine dimension of the well set: 0, 1 or 2
};

// Plane through three wells; degeneracy reported through span_dim.
AffinePlane affinePlane(const std::array<Sym2, 3>& wells);

struct ConeFrame {
    Vec2 a;          // unit
    Vec2 n;          // unit, independent of a
    Sym2 ea;         // a_perp (x) a_perp, rank one
    Sym2 en;         // n_perp (x) n_perp, rank one
    double cross_sq = 0.0;  // |a x n|^2
};

// Rank-one coordinate frame of the plane. Requires span_dim == 2 and an
// indefinite normal; throws NormalNotIndefinite otherwise (the plane
// then meets no rank-one directions).
ConeFrame frameFromNormal(const AffinePlane& plane);

struct PlaneCoords {
    double xi = 0.0;   // coefficient of ea
    double eta = 0.0;  // coefficient of en
};

// Coordinates of U - origin in the frame; throws NotInPlane when the
// residual of the reconstruction exceeds 1e-8 * scale.
PlaneCoords toPlaneCoords(const Sym2& u, const Sym2& origin, const ConeFrame& frame);

inline Sym2 fromPlaneCoords(const Sym2& origin, const ConeFrame& frame,
                            const PlaneCoords& c) {
    return origin + c.xi * frame.ea + c.eta * frame.en;
}

// Classification of a three-well set, up to relabeling:
//   TypeOne  - exactly two incompatible pairs (both through well 1),
//   TypeTwo  - exactly one incompatible pair (wells 2 and 3).
enum class WellKind {
    AllCompatible,
    AllIncompatible,
    TypeOne,
    TypeTwo,
    DegenerateSpan,
};

const char* wellKindName(WellKind kind) noexcept;

struct U0Result {
    Sym2 u0;
    std::array<double, 3> lambda{};  // barycentric coefficients of u0
    bool inside = false;             // all lambda within [0,1]
    double det_u1 = 0.0;             // det(U1 - U0), recorded, not assumed strict
};

// The matrix U0 in C(U) with det(U0 - U2) = det(U0 - U3) = 0, built from
// the argmin construction on frame coordinates. Wells must already carry
// the type-one / type-two labeling; throws WrongClass otherwise.
U0Result computeU0(const std::array<Sym2, 3>& wells, WellKind kind);

struct ExteriorU0Result {
    Sym2 u0;
    double t0 = 0.0;  // u0 = t0 * U3 + (1 - t0) * U2; t0 outside [0,1]
};

// The analogue of U0 on the line through U2 and U3 when that pair is
// rank-one compatible: all three det(U0 - Ui) vanish. Throws
// DegeneratePlane when the defining linear equation degenerates.
ExteriorU0Result exteriorU0(const std::array<Sym2, 3>& wells);

// Smallest t in (0,1] with det(t*A + (1-t)*B - P) = 0, from the exact
// quadratic in t; nullopt when no such root exists.
std::optional<double> segmentRankOnePoint(const Sym2& a, const Sym2& b, const Sym2& p);

}  // namespace triwell
