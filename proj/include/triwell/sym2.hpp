#pragma once

// Algebra of symmetric 2x2 matrices viewed as linear strains.
//
// A matrix M = [[xx, xy],[xy, yy]] is identified with the vector
// (xx, yy, xy*sqrt(2)) in R^3; the map preserves the Frobenius inner
// product. Two strains M1, M2 are compatible iff det(M1 - M2) <= 0,
// rank-one compatible iff the determinant vanishes and the matrices
// differ. The set of strains incompatible with U is the interior of the
// cone { V : ||V - U|| < |<V - U, Id>| } whose boundary consists of the
// rank-one directions.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace triwell {

enum class ErrorCode {
    DetPositive,
    NormalNotIndefinite,
    NotInPlane,
    WrongClass,
    DegeneratePlane,
    RankOnePresent,
    DomainError,
    ParseError,
    AsymmetricInput,
};

const char* errorCodeName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }
inline double cross(const Vec2& u, const Vec2& v) { return u.x * v.y - u.y * v.x; }
// 90-degree counterclockwise rotation.
inline Vec2 perp(const Vec2& u) { return {-u.y, u.x}; }

// Symmetric 2x2 matrix; only the three independent entries are stored.
struct Sym2 {
    double xx = 0.0;  // M11
    double yy = 0.0;  // M22
    double xy = 0.0;  // M12 = M21

    friend Sym2 operator+(const Sym2& a, const Sym2& b) {
        return {a.xx + b.xx, a.yy + b.yy, a.xy + b.xy};
    }
    friend Sym2 operator-(const Sym2& a, const Sym2& b) {
        return {a.xx - b.xx, a.yy - b.yy, a.xy - b.xy};
    }
    friend Sym2 operator-(const Sym2& a) { return {-a.xx, -a.yy, -a.xy}; }
    friend Sym2 operator*(double s, const Sym2& a) {
        return {s * a.xx, s * a.yy, s * a.xy};
    }
    friend Sym2 operator*(const Sym2& a, double s) { return s * a; }
};

inline Sym2 diag(double a, double b) { return {a, b, 0.0}; }
inline Sym2 identity() { return {1.0, 1.0, 0.0}; }

// a (x) a for a vector a.
inline Sym2 outer(const Vec2& a) { return {a.x * a.x, a.y * a.y, a.x * a.y}; }

// Symmetrized tensor product a (.) n = (a (x) n + n (x) a) / 2.
inline Sym2 symOuter(const Vec2& a, const Vec2& n) {
    return {a.x * n.x, a.y * n.y, 0.5 * (a.x * n.y + a.y * n.x)};
}

inline double det(const Sym2& m) { return m.xx * m.yy - m.xy * m.xy; }

// The adjugate S(M) = R M R^T; an involution with <S(M), M> = 2 det M.
inline Sym2 adjugate(const Sym2& m) { return {m.yy, m.xx, -m.xy}; }

inline double trace(const Sym2& m) { return m.xx + m.yy; }

// Frobenius inner product; the off-diagonal entry counts twice.
inline double inner(const Sym2& a, const Sym2& b) {
    return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

inline double normSq(const Sym2& m) { return inner(m, m); }
inline double norm(const Sym2& m) { return std::sqrt(normSq(m)); }

inline std::array<double, 3> toR3(const Sym2& m) {
    return {m.xx, m.yy, m.xy * std::sqrt(2.0)};
}

inline Sym2 fromR3(const std::array<double, 3>& v) {
    return {v[0], v[1], v[2] / std::sqrt(2.0)};
}

// Tolerance policy: determinants are quadratic in the entries, so the
// sign test is scaled by the squared norm of the argument (floored at 1).
inline constexpr double kDetRelTol = 1e-9;

inline double detTolerance(const Sym2& diff) {
    return kDetRelTol * std::max(1.0, normSq(diff));
}

enum class CompatKind { Incompatible, RankOne, Compatible };

struct Compat {
    CompatKind kind = CompatKind::RankOne;
    double det_value = 0.0;  // det(M1 - M2), the classifying quantity
};

// Classifies det(M1 - M2) against +-tol. Identical inputs report RankOne
// with det 0; callers needing two distinct wells must check distinctness
// separately.
Compat compat(const Sym2& m1, const Sym2& m2, double tol);
Compat compat(const Sym2& m1, const Sym2& m2);

enum class ConeRegion { Interior, Boundary, Exterior };

// Locates V relative to the incompatible cone at U by comparing
// ||V - U|| with |<V - U, Id>|. Interior corresponds to incompatibility.
ConeRegion coneMembership(const Sym2& v, const Sym2& u);

struct RankOneFactors {
    Vec2 a;     // unit
    Vec2 n;     // unit
    double nu;  // >= 0; Q = nu * (a (.) n)
};

// Factors Q = nu * a (.) n for det(Q) <= tol. Throws DetPositive
// otherwise. Output is deterministic: nu >= 0 and the first nonzero
// component of a is positive. Q = 0 yields (e1, e1, 0).
RankOneFactors rankOneDecompose(const Sym2& q);

struct EigenSym2 {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    Vec2 v_max;  // unit eigenvector for lambda_max
    Vec2 v_min;  // unit eigenvector for lambda_min
};

EigenSym2 eigenDecompose(const Sym2& m);

}  // namespace triwell
