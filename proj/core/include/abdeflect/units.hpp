#pragma once

#include "abdeflect/errors.hpp"

namespace abdeflect {

/// CGS speed of light, cm/s.
inline constexpr double kSpeedOfLightCgs = 2.99792458e10;

/// Gaussian units throughout. c is a parameter so desk-scale scenarios can
/// run with c = 10..100 in natural problem units: the 1/c^2 bookkeeping is
/// the physics, the CGS magnitudes are not.
struct UnitSystem {
    double c = kSpeedOfLightCgs;

    constexpr UnitSystem() = default;
    explicit UnitSystem(double c_) : c(c_) {
        if (!(c > 0.0)) throw DomainError("UnitSystem: c must be positive");
    }
};

}  // namespace abdeflect
