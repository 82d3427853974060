#include "triwell/sym2.hpp"

#include <algorithm>

namespace triwell {

const char* errorCodeName(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DetPositive: return "DetPositive";
        case ErrorCode::NormalNotIndefinite: return "NormalNotIndefinite";
        case ErrorCode::NotInPlane: return "NotInPlane";
        case ErrorCode::WrongClass: return "WrongClass";
        case ErrorCode::DegeneratePlane: return "DegeneratePlane";
        case ErrorCode::RankOnePresent: return "RankOnePresent";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    }
    return "Unknown";
}

Compat compat(const Sym2& m1, const Sym2& m2, double tol) {
    const double d = det(m1 - m2);
    Compat result;
    result.det_value = d;
    if (d > tol) {
        result.kind = CompatKind::Incompatible;
    } else if (d < -tol) {
        result.kind = CompatKind::Compatible;
    } else {
        result.kind = CompatKind::RankOne;
    }
    return result;
}

Compat compat(const Sym2& m1, const Sym2& m2) {
    return compat(m1, m2, detTolerance(m1 - m2));
}

ConeRegion coneMembership(const Sym2& v, const Sym2& u) {
    const Sym2 m = v - u;
    const double nrm = norm(m);
    const double tr = std::abs(trace(m));
    // ||M||^2 = <M,Id>^2 - 2 det M links this test to the sign of det M;
    // the shell below is strictly inside the det-tolerance shell, so the
    // two classifications agree whenever |det| exceeds its tolerance.
    const double tol = 0.5 * kDetRelTol * std::max(1.0, nrm);
    const double s = tr - nrm;
    if (s > tol) return ConeRegion::Interior;
    if (s < -tol) return ConeRegion::Exterior;
    return ConeRegion::Boundary;
}

namespace {

// First nonzero component made positive; zero vector left alone.
Vec2 lexNormalize(const Vec2& v) {
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) return {-v.x, -v.y};
    return v;
}

}  // namespace

EigenSym2 eigenDecompose(const Sym2& m) {
    EigenSym2 e;
    const double mean = 0.5 * (m.xx + m.yy);
    const double diff = 0.5 * (m.xx - m.yy);
    const double r = std::hypot(diff, m.xy);
    e.lambda_max = mean + r;
    e.lambda_min = mean - r;
    if (r == 0.0) {
        e.v_max = {1.0, 0.0};
        e.v_min = {0.0, 1.0};
        return e;
    }
    // Pick the better conditioned column of (M - lambda_min I).
    Vec2 v1{diff + r, m.xy};
    Vec2 v2{m.xy, r - diff};
    Vec2 v = (dot(v1, v1) >= dot(v2, v2)) ? v1 : v2;
    const double len = std::sqrt(dot(v, v));
    e.v_max = lexNormalize({v.x / len, v.y / len});
    e.v_min = lexNormalize(perp(e.v_max));
    return e;
}

RankOneFactors rankOneDecompose(const Sym2& q) {
    const double d = det(q);
    if (d > detTolerance(q)) {
        throw Error(ErrorCode::DetPositive,
                    "rankOneDecompose: determinant " + std::to_string(d) +
                        " is positive beyond tolerance");
    }
    if (normSq(q) == 0.0) {
        return {{1.0, 0.0}, {1.0, 0.0}, 0.0};
    }
    const EigenSym2 e = eigenDecompose(q);
    const double nu = e.lambda_max - e.lambda_min;
    if (nu == 0.0) {
        // Multiple of the identity with det <= tol: only the zero matrix,
        // handled above; kept for completeness.
        return {{1.0, 0.0}, {1.0, 0.0}, 0.0};
    }
    // With v+ = a + n and v- = a - n eigenvectors, the eigenvalues are
    // nu*(a.n +- 1)/2, so nu is the spread and a.n the normalized trace.
    const double p = std::clamp(trace(q) / nu, -1.0, 1.0);
    const double ca = std::sqrt(0.5 * (1.0 + p));
    const double cb = std::sqrt(0.5 * (1.0 - p));
    Vec2 a{ca * e.v_max.x + cb * e.v_min.x, ca * e.v_max.y + cb * e.v_min.y};
    Vec2 n{ca * e.v_max.x - cb * e.v_min.x, ca * e.v_max.y - cb * e.v_min.y};
    if (a.x < 0.0 || (a.x == 0.0 && a.y < 0.0)) {
        a = {-a.x, -a.y};
        n = {-n.x, -n.y};
    }
    return {a, n, nu};
}

}  // namespace triwell
