#pragma once

// Random well-set generators for the property campaigns. Type one and
// type two sets are built directly in the rank-one frame coordinates of
// their sign patterns, then pushed through a random frame and
// translation; this covers both classes with controlled conditioning.

#include <array>
#include <random>

#include "triwell/plane.hpp"
#include "triwell/sym2.hpp"

namespace triwell {

struct GenOptions {
    double coef_min = 0.25;
    double coef_max = 2.0;
    double min_cross = 0.1;  // lower bound on |a x n|
    double translate_range = 2.0;
    bool translate = true;
};

Sym2 randomSym2(std::mt19937_64& rng, double range);

// Type one or type two set; strict sets have no rank-one pair, otherwise
// one of the defining coefficients is zeroed to create one.
std::array<Sym2, 3> randomTypeSet(WellKind kind, bool strict, std::mt19937_64& rng,
                                  const GenOptions& opts = {});

// Pairwise compatible wells (frame coordinates anti-monotone).
std::array<Sym2, 3> randomCompatibleSet(std::mt19937_64& rng,
                                        const GenOptions& opts = {});

// Pairwise incompatible wells (frame coordinates co-monotone).
std::array<Sym2, 3> randomIncompatibleSet(std::mt19937_64& rng,
                                          const GenOptions& opts = {});

// Dispatch by classification kind (strict variants).
std::array<Sym2, 3> randomWellSet(WellKind kind, std::mt19937_64& rng,
                                  const GenOptions& opts = {});

}  // namespace triwell
