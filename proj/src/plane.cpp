#include "triwell/plane.hpp"

#include <algorithm>
#include <cmath>

namespace triwell {

const char* wellKindName(WellKind kind) noexcept {
    switch (kind) {
        case WellKind::AllCompatible: return "all_compatible";
        case WellKind::AllIncompatible: return "all_incompatible";
        case WellKind::TypeOne: return "type_one";
        case WellKind::TypeTwo: return "type_two";
        case WellKind::DegenerateSpan: return "degenerate_span";
    }
    return "unknown";
}

namespace {

std::array<double, 3> sub(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

std::array<double, 3> cross3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

constexpr double kRankRelTol = 1e-8;

}  // namespace

AffinePlane affinePlane(const std::array<Sym2, 3>& wells) {
    AffinePlane plane;
    plane.base = wells[0];
    const auto d2 = sub(toR3(wells[1]), toR3(wells[0]));
    const auto d3 = sub(toR3(wells[2]), toR3(wells[0]));
    const double scale = std::max({1.0, norm3(d2), norm3(d3)});
    // Singular values of the 3x2 matrix [d2 d3] via its 2x2 Gram matrix.
    const Sym2 gram{d2[0] * d2[0] + d2[1] * d2[1] + d2[2] * d2[2],
                    d3[0] * d3[0] + d3[1] * d3[1] + d3[2] * d3[2],
                    d2[0] * d3[0] + d2[1] * d3[1] + d2[2] * d3[2]};
    const EigenSym2 ev = eigenDecompose(gram);
    const double thresh = kRankRelTol * scale;
    const double s1 = std::sqrt(std::max(0.0, ev.lambda_max));
    const double s2 = std::sqrt(std::max(0.0, ev.lambda_min));
    plane.span_dim = (s1 > thresh ? 1 : 0) + (s2 > thresh ? 1 : 0);
    if (plane.span_dim == 2) {
        auto c = cross3(d2, d3);
        const double len = norm3(c);
        plane.normal = fromR3({c[0] / len, c[1] / len, c[2] / len});
    }
    return plane;
}

ConeFrame frameFromNormal(const AffinePlane& plane) {
    if (plane.span_dim != 2) {
        throw Error(ErrorCode::NormalNotIndefinite,
                    "frameFromNormal: wells do not span a plane");
    }
    const double d = det(plane.normal);
    if (d >= -detTolerance(plane.normal)) {
        throw Error(ErrorCode::NormalNotIndefinite,
                    "frameFromNormal: det of normal is " + std::to_string(d) +
                        "; the plane meets no rank-one directions");
    }
    const RankOneFactors f = rankOneDecompose(plane.normal);
    ConeFrame frame;
    frame.a = f.a;
    frame.n = f.n;
    frame.ea = outer(perp(f.a));
    frame.en = outer(perp(f.n));
    const double c = cross(f.a, f.n);
    frame.cross_sq = c * c;
    return frame;
}

PlaneCoords toPlaneCoords(const Sym2& u, const Sym2& origin, const ConeFrame& frame) {
    const Sym2 d = u - origin;
    // Gram system: <ea,ea> = <en,en> = 1, <ea,en> = (a.n)^2.
    const double g = inner(frame.ea, frame.en);
    const double rhs_a = inner(frame.ea, d);
    const double rhs_n = inner(frame.en, d);
    const double den = 1.0 - g * g;
    PlaneCoords c;
    c.xi = (rhs_a - g * rhs_n) / den;
    c.eta = (rhs_n - g * rhs_a) / den;
    const Sym2 residual = d - c.xi * frame.ea - c.eta * frame.en;
    const double scale = std::max(1.0, norm(d));
    if (norm(residual) > 1e-8 * scale) {
        throw Error(ErrorCode::NotInPlane,
                    "toPlaneCoords: residual " + std::to_string(norm(residual)) +
                        " exceeds tolerance");
    }
    return c;
}

U0Result computeU0(const std::array<Sym2, 3>& wells, WellKind kind) {
    if (kind != WellKind::TypeOne && kind != WellKind::TypeTwo) {
        throw Error(ErrorCode::WrongClass,
                    "computeU0: classification must be type one or type two");
    }
    const AffinePlane plane = affinePlane(wells);
    const ConeFrame frame = frameFromNormal(plane);
    const PlaneCoords c2 = toPlaneCoords(wells[1], wells[0], frame);
    const PlaneCoords c3 = toPlaneCoords(wells[2], wells[0], frame);
    // Ties pick the index-2 candidate; they occur only when the two
    // constructions coincide.
    const double alpha = (std::abs(c2.xi) <= std::abs(c3.xi)) ? c2.xi : c3.xi;
    const double beta = (std::abs(c2.eta) <= std::abs(c3.eta)) ? c2.eta : c3.eta;

    U0Result r;
    r.u0 = wells[0] + alpha * frame.ea + beta * frame.en;
    r.det_u1 = det(wells[0] - r.u0);

    // Barycentric coefficients from the 2x2 affine system; the printed
    // closed formulas are kept as a cross-check in the tests.
    const double den = c2.xi * c3.eta - c3.xi * c2.eta;
    const double l2 = (alpha * c3.eta - beta * c3.xi) / den;
    const double l3 = (c2.xi * beta - c2.eta * alpha) / den;
    r.lambda = {1.0 - l2 - l3, l2, l3};
    const double band = 1e-9;
    r.inside = true;
    for (double l : r.lambda) {
        if (l < -band || l > 1.0 + band) r.inside = false;
    }
    return r;
}

ExteriorU0Result exteriorU0(const std::array<Sym2, 3>& wells) {
    const Sym2 d32 = wells[2] - wells[1];
    const Sym2 d21 = wells[1] - wells[0];
    if (std::abs(det(d32)) > detTolerance(d32)) {
        throw Error(ErrorCode::WrongClass,
                    "exteriorU0: wells 2 and 3 are not rank-one compatible");
    }
    const double den = inner(adjugate(d32), d21);
    const double scale = std::max(1.0, norm(d32) * norm(d21));
    if (std::abs(den) <= 1e-12 * scale) {
        throw Error(ErrorCode::DegeneratePlane,
                    "exteriorU0: the rank-one line through wells 2 and 3 is "
                    "parallel to the one sought");
    }
    ExteriorU0Result r;
    r.t0 = -det(d21) / den;
    r.u0 = r.t0 * wells[2] + (1.0 - r.t0) * wells[1];
    return r;
}

std::optional<double> segmentRankOnePoint(const Sym2& a, const Sym2& b, const Sym2& p) {
    // det(t*A + (1-t)*B - P) = qa * t^2 + qb * t + qc.
    const Sym2 dir = a - b;
    const Sym2 off = b - p;
    const double qa = det(dir);
    const double qb = inner(adjugate(dir), off);
    const double qc = det(off);
    const double sa = std::max(1.0, normSq(dir));
    const double sb = std::max(1.0, norm(dir) * norm(off));
    const double sc = std::max(1.0, normSq(off));

    constexpr double kRel = 1e-12;
    const double t_lo = 1e-12;
    const double t_hi = 1.0 + 1e-12;
    auto accept = [&](double t) -> bool { return t > t_lo && t <= t_hi; };

    std::optional<double> best;
    auto consider = [&](double t) {
        if (!accept(t)) return;
        t = std::min(t, 1.0);
        if (!best || t < *best) best = t;
    };

    if (std::abs(qa) <= kRel * sa) {
        if (std::abs(qb) <= kRel * sb) {
            if (std::abs(qc) <= kRel * sc) return 1.0;  // identically zero
            return std::nullopt;
        }
        consider(-qc / qb);
        return best;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(root, qb == 0.0 ? 1.0 : qb));
    consider(q / qa);
    if (q != 0.0) consider(qc / q);
    return best;
}

}  // namespace triwell
