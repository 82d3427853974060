#include "triwell/hulls.hpp"

#include <algorithm>
#include <cmath>

namespace triwell {

const char* hullStatusName(HullStatus status) noexcept {
    switch (status) {
        case HullStatus::ExactEqualsLamination: return "exact_equals_lamination";
        case HullStatus::ExactConvex: return "exact_convex";
        case HullStatus::ExactWells: return "exact_wells";
        case HullStatus::BoundOnly: return "bound_only";
    }
    return "unknown";
}

WellClass classify(const std::array<Sym2, 3>& wells, double tol) {
    WellClass cls;
    const AffinePlane plane = affinePlane(wells);
    const double scale =
        std::max({1.0, norm(wells[0]), norm(wells[1]), norm(wells[2])});

    // Coincident wells reduce to a two-well problem.
    const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : pairs) {
        if (norm(wells[i] - wells[j]) <= 1e-9 * scale) {
            cls.kind = WellKind::DegenerateSpan;
            return cls;
        }
    }
    for (auto [i, j] : pairs) {
        const Sym2 d = wells[i] - wells[j];
        const double t = tol >= 0.0 ? tol : detTolerance(d);
        if (std::abs(det(d)) <= t) cls.rank_one_pairs.emplace_back(i, j);
    }
    if (plane.span_dim < 2) {
        cls.kind = WellKind::DegenerateSpan;
        return cls;
    }

    std::array<int, 3> sign{};  // sign of det for pairs (0,1), (0,2), (1,2)
    int positives = 0;
    for (int k = 0; k < 3; ++k) {
        const Sym2 d = wells[pairs[k].first] - wells[pairs[k].second];
        const double dv = det(d);
        const double t = tol >= 0.0 ? tol : detTolerance(d);
        sign[k] = dv > t ? 1 : (dv < -t ? -1 : 0);
        if (sign[k] > 0) ++positives;
    }

    switch (positives) {
        case 0:
            cls.kind = WellKind::AllCompatible;
            cls.perm = {0, 1, 2};
            break;
        case 3:
            cls.kind = WellKind::AllIncompatible;
            cls.perm = {0, 1, 2};
            break;
        case 1: {
            cls.kind = WellKind::TypeTwo;
            // the incompatible pair becomes (U2, U3)
            const int k = sign[0] > 0 ? 0 : (sign[1] > 0 ? 1 : 2);
            const int other = 3 - pairs[k].first - pairs[k].second;
            cls.perm = {other, pairs[k].first, pairs[k].second};
            break;
        }
        case 2: {
            cls.kind = WellKind::TypeOne;
            // the doubly incompatible well becomes U1
            const int k = sign[0] <= 0 ? 0 : (sign[1] <= 0 ? 1 : 2);  // compatible pair
            const int common = 3 - pairs[k].first - pairs[k].second;
            cls.perm = {common, pairs[k].first, pairs[k].second};
            break;
        }
    }
    const auto w = permuted(wells, cls);
    cls.dets = {det(w[0] - w[1]), det(w[0] - w[2]), det(w[1] - w[2])};
    return cls;
}

namespace {

double pointSegmentDistance(const Sym2& u, const Sym2& a, const Sym2& b) {
    const Sym2 d = b - a;
    const double len2 = normSq(d);
    double t = len2 > 0.0 ? inner(u - a, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(u - (a + t * d));
}

double pointTriangleDistance(const Sym2& u, const Sym2& a, const Sym2& b,
                             const Sym2& c) {
    // Interior test via the Gram system of the edge span; degenerate
    // triangles fall through to the edge distances.
    const Sym2 e1 = b - a;
    const Sym2 e2 = c - a;
    const Sym2 d = u - a;
    const double g11 = normSq(e1);
    const double g22 = normSq(e2);
    const double g12 = inner(e1, e2);
    const double den = g11 * g22 - g12 * g12;
    const double scale = std::max(1.0, g11 * g22);
    if (den > 1e-14 * scale) {
        const double r1 = inner(e1, d);
        const double r2 = inner(e2, d);
        const double s = (g22 * r1 - g12 * r2) / den;
        const double t = (g11 * r2 - g12 * r1) / den;
        if (s >= 0.0 && t >= 0.0 && s + t <= 1.0) {
            return norm(d - s * e1 - t * e2);
        }
    }
    return std::min({pointSegmentDistance(u, a, b), pointSegmentDistance(u, a, c),
                     pointSegmentDistance(u, b, c)});
}

struct ContainsVisitor {
    const Sym2& u;
    double tol;

    double eps(double piece_scale) const {
        return tol * std::max({1.0, piece_scale, norm(u)});
    }

    bool operator()(const PointPiece& p) const {
        return norm(u - p.p) <= eps(norm(p.p));
    }
    bool operator()(const SegmentPiece& s) const {
        return pointSegmentDistance(u, s.a, s.b) <= eps(std::max(norm(s.a), norm(s.b)));
    }
    bool operator()(const TrianglePiece& t) const {
        return pointTriangleDistance(u, t.a, t.b, t.c) <=
               eps(std::max({norm(t.a), norm(t.b), norm(t.c)}));
    }
    bool operator()(const CurvedPatchPiece& p) const {
        const double s =
            std::max({norm(p.corners[0] - p.u0), norm(p.corners[1] - p.u0),
                      norm(p.corners[2] - p.u0)});
        if (pointTriangleDistance(u, p.corners[0], p.corners[1], p.corners[2]) >
            eps(std::max({norm(p.corners[0]), norm(p.corners[1]), norm(p.corners[2])}))) {
            return false;
        }
        const double cubic = tol * std::max(1.0, s * s * s);
        return hbar(u - p.u0, p.v1, p.v2, p.c) >= -cubic;
    }
};

}  // namespace

bool regionContains(const HullRegion& region, const Sym2& u, double tol) {
    ContainsVisitor visitor{u, tol};
    for (const auto& piece : region.pieces) {
        if (std::visit(visitor, piece)) return true;
    }
    return false;
}

HullRegion translateRegion(const HullRegion& region, const Sym2& shift) {
    HullRegion out;
    out.pieces.reserve(region.pieces.size());
    for (const auto& piece : region.pieces) {
        if (const auto* p = std::get_if<PointPiece>(&piece)) {
            out.pieces.push_back(PointPiece{p->p + shift});
        } else if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
            out.pieces.push_back(SegmentPiece{s->a + shift, s->b + shift});
        } else if (const auto* t = std::get_if<TrianglePiece>(&piece)) {
            out.pieces.push_back(TrianglePiece{t->a + shift, t->b + shift, t->c + shift});
        } else if (const auto* c = std::get_if<CurvedPatchPiece>(&piece)) {
            CurvedPatchPiece moved = *c;
            for (auto& corner : moved.corners) corner = corner + shift;
            moved.u0 = moved.u0 + shift;
            out.pieces.push_back(moved);
        }
    }
    return out;
}

HullRegion laminationHull(const std::array<Sym2, 3>& wells, const WellClass& cls) {
    HullRegion region;
    const auto w = permuted(wells, cls);
    switch (cls.kind) {
        case WellKind::TypeOne:
            region.pieces.push_back(PointPiece{w[0]});
            region.pieces.push_back(SegmentPiece{w[1], w[2]});
            break;
        case WellKind::TypeTwo: {
            const U0Result u0 = computeU0(w, cls.kind);
            region.pieces.push_back(TrianglePiece{u0.u0, w[0], w[1]});
            region.pieces.push_back(TrianglePiece{u0.u0, w[0], w[2]});
            break;
        }
        case WellKind::AllCompatible:
            region.pieces.push_back(TrianglePiece{w[0], w[1], w[2]});
            break;
        case WellKind::AllIncompatible:
            region.pieces.push_back(PointPiece{w[0]});
            region.pieces.push_back(PointPiece{w[1]});
            region.pieces.push_back(PointPiece{w[2]});
            break;
        case WellKind::DegenerateSpan:
            throw Error(ErrorCode::WrongClass,
                        "laminationHull: degenerate well set");
    }
    return region;
}

Sym2 boundMatrixC(const Sym2& v1, const Sym2& v2, const Sym2& v3) {
    const Sym2 e2 = v2 - v1;
    const Sym2 e3 = v3 - v1;
    // Gram determinant; the proof squares the inner product.
    const double p2 = normSq(e2) * normSq(e3) - inner(e2, e3) * inner(e2, e3);
    const double scale4 = std::max(1.0, normSq(e2) * normSq(e3));
    if (p2 <= 1e-18 * scale4) {
        throw Error(ErrorCode::DegeneratePlane,
                    "boundMatrixC: wells are affinely dependent");
    }
    const Sym2 numerator = inner(e3, v3 - v2) * e2 + inner(e2, v2 - v3) * e3;
    Sym2 c = (1.0 / std::sqrt(p2)) * numerator;
    if (inner(c, v2) < 0.0) c = -c;
    return c;
}

OuterBound outerBound(const std::array<Sym2, 3>& wells, const WellClass& cls) {
    if (cls.kind != WellKind::TypeOne && cls.kind != WellKind::TypeTwo) {
        throw Error(ErrorCode::WrongClass,
                    "outerBound: requires a type one or type two set");
    }
    if (!cls.rank_one_pairs.empty()) {
        throw Error(ErrorCode::RankOnePresent,
                    "outerBound: a rank-one pair is present; the quasiconvex "
                    "hull equals the lamination hull");
    }
    const auto w = permuted(wells, cls);
    const U0Result u0 = computeU0(w, cls.kind);

    OuterBound bound;
    bound.u0 = u0.u0;
    bound.v = {w[0] - u0.u0, w[1] - u0.u0, w[2] - u0.u0};
    bound.c = boundMatrixC(bound.v[0], bound.v[1], bound.v[2]);

    // hbar restricted to the plane V = x*ea + y*en is a bilinear form;
    // dividing by s*|a x n|^2 gives the component-wise h(x,y).
    const ConeFrame frame = frameFromNormal(affinePlane(w));
    const double q = frame.cross_sq;
    const double s = cls.kind == WellKind::TypeTwo ? 1.0 : -1.0;
    const double det_v1 = det(bound.v[0]);
    bound.h.a_xy = -inner(bound.c, bound.v[0] - bound.v[1]) / s;
    bound.h.b_x = inner(bound.c, frame.ea) * det_v1 / (s * q);
    bound.h.d_y = inner(bound.c, frame.en) * det_v1 / (s * q);
    bound.h.c0 = -inner(bound.c, bound.v[1]) * det_v1 / (s * q);

    bound.region.pieces.push_back(
        CurvedPatchPiece{{w[0], w[1], w[2]}, u0.u0, bound.c, bound.v[0], bound.v[1]});
    return bound;
}

QcHull quasiconvexHull(const std::array<Sym2, 3>& wells) {
    QcHull hull;
    hull.cls = classify(wells);
    switch (hull.cls.kind) {
        case WellKind::DegenerateSpan:
            throw Error(ErrorCode::WrongClass,
                        "quasiconvexHull: degenerate well set");
        case WellKind::AllCompatible:
            hull.status = HullStatus::ExactConvex;
            hull.inner = laminationHull(wells, hull.cls);
            hull.outer = hull.inner;
            break;
        case WellKind::AllIncompatible:
            hull.status = HullStatus::ExactWells;
            hull.inner = laminationHull(wells, hull.cls);
            hull.outer = hull.inner;
            break;
        case WellKind::TypeOne:
        case WellKind::TypeTwo: {
            hull.inner = laminationHull(wells, hull.cls);
            const auto w = permuted(wells, hull.cls);
            hull.u0 = computeU0(w, hull.cls.kind).u0;
            if (!hull.cls.rank_one_pairs.empty()) {
                hull.status = HullStatus::ExactEqualsLamination;
                hull.outer = hull.inner;
            } else {
                hull.status = HullStatus::BoundOnly;
                hull.bound = outerBound(wells, hull.cls);
                hull.outer = hull.bound->region;
            }
            break;
        }
    }
    return hull;
}

}  // namespace triwell
