#include "triwell/generator.hpp"

#include <cmath>

namespace triwell {

namespace {

Vec2 unitVector(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct FrameSample {
    Sym2 ea, en;
};

FrameSample sampleFrame(std::mt19937_64& rng, const GenOptions& opts) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const Vec2 a = unitVector(angle(rng));
    Vec2 n = a;
    do {
        n = unitVector(angle(rng));
    } while (std::abs(cross(a, n)) < opts.min_cross);
    return {outer(perp(a)), outer(perp(n))};
}

double magnitude(std::mt19937_64& rng, const GenOptions& opts) {
    std::uniform_real_distribution<double> mag(opts.coef_min, opts.coef_max);
    return mag(rng);
}

Sym2 translation(std::mt19937_64& rng, const GenOptions& opts) {
    if (!opts.translate) return {};
    return randomSym2(rng, opts.translate_range);
}

}  // namespace

Sym2 randomSym2(std::mt19937_64& rng, double range) {
    std::uniform_real_distribution<double> u(-range, range);
    const double xx = u(rng);
    const double yy = u(rng);
    const double xy = u(rng);
    return {xx, yy, xy};
}

std::array<Sym2, 3> randomTypeSet(WellKind kind, bool strict, std::mt19937_64& rng,
                                  const GenOptions& opts) {
    if (kind != WellKind::TypeOne && kind != WellKind::TypeTwo) {
        throw Error(ErrorCode::WrongClass, "randomTypeSet: type one or two only");
    }
    const FrameSample f = sampleFrame(rng, opts);
    double xi, eta, gamma, zeta;
    if (kind == WellKind::TypeTwo) {
        // eta >= 0 > zeta, gamma > 0 >= xi; strictness requires eta > 0
        // and xi < 0.
        eta = magnitude(rng, opts);
        zeta = -magnitude(rng, opts);
        gamma = magnitude(rng, opts);
        xi = -magnitude(rng, opts);
        if (!strict) {
            std::uniform_int_distribution<int> which(0, 2);
            const int w = which(rng);
            if (w != 1) eta = 0.0;  // rank-one pair (U1, U2)
            if (w != 0) xi = 0.0;   // rank-one pair (U1, U3)
        }
    } else {
        // eta > 0 >= zeta, xi > 0 >= gamma; strictness requires gamma < 0
        // and zeta < 0.
        eta = magnitude(rng, opts);
        xi = magnitude(rng, opts);
        gamma = -magnitude(rng, opts);
        zeta = -magnitude(rng, opts);
        if (!strict) {
            // Only the compatible pair (U2, U3) can be rank-one for type
            // one; zeroing both coefficients would collapse U2 onto U3.
            std::uniform_int_distribution<int> which(0, 1);
            if (which(rng) == 0) {
                gamma = 0.0;
            } else {
                zeta = 0.0;
            }
        }
    }
    const Sym2 shift = translation(rng, opts);
    return {shift + xi * f.ea + eta * f.en, shift + gamma * f.ea,
            shift + zeta * f.en};
}

std::array<Sym2, 3> randomCompatibleSet(std::mt19937_64& rng, const GenOptions& opts) {
    const FrameSample f = sampleFrame(rng, opts);
    // Strictly increasing x against strictly decreasing y makes every
    // pairwise product (dx)(dy) negative.
    const double step = magnitude(rng, opts);
    const double x0 = -magnitude(rng, opts);
    const double y0 = magnitude(rng, opts);
    std::array<double, 3> xs{x0, x0 + step, x0 + step + magnitude(rng, opts)};
    std::array<double, 3> ys{y0, y0 - magnitude(rng, opts), y0 - magnitude(rng, opts) - step};
    const Sym2 shift = translation(rng, opts);
    std::array<Sym2, 3> wells;
    for (int i = 0; i < 3; ++i) wells[i] = shift + xs[i] * f.ea + ys[i] * f.en;
    return wells;
}

std::array<Sym2, 3> randomIncompatibleSet(std::mt19937_64& rng, const GenOptions& opts) {
    const FrameSample f = sampleFrame(rng, opts);
    const double x0 = -magnitude(rng, opts);
    const double y0 = -magnitude(rng, opts);
    std::array<double, 3> xs{x0, x0 + magnitude(rng, opts), 0.0};
    xs[2] = xs[1] + magnitude(rng, opts);
    std::array<double, 3> ys{y0, y0 + magnitude(rng, opts), 0.0};
    ys[2] = ys[1] + magnitude(rng, opts);
    const Sym2 shift = translation(rng, opts);
    std::array<Sym2, 3> wells;
    for (int i = 0; i < 3; ++i) wells[i] = shift + xs[i] * f.ea + ys[i] * f.en;
    return wells;
}

std::array<Sym2, 3> randomWellSet(WellKind kind, std::mt19937_64& rng,
                                  const GenOptions& opts) {
    switch (kind) {
        case WellKind::TypeOne:
        case WellKind::TypeTwo:
            return randomTypeSet(kind, true, rng, opts);
        case WellKind::AllCompatible:
            return randomCompatibleSet(rng, opts);
        case WellKind::AllIncompatible:
            return randomIncompatibleSet(rng, opts);
        case WellKind::DegenerateSpan:
            break;
    }
    throw Error(ErrorCode::WrongClass, "randomWellSet: unsupported kind");
}

}  // namespace triwell
