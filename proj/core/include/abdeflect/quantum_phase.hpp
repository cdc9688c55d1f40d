#pragma once

#include <functional>
#include <vector>

#include "abdeflect/dynamics.hpp"
#include "abdeflect/em_fields.hpp"

namespace abdeflect {

enum class PathSide { Left, Right };

/// Polyline path from the source through one slit to a screen point.
/// Must not intersect the solenoid cross-section, and near the solenoid
/// (closest approach within 12 R of the axis) waypoints must be spaced at
/// most R/4 apart so the polyline tracks the intended curve where A varies
/// fastest.
struct PathSpec {
    std::vector<Vec3> waypoints;
    PathSide side = PathSide::Left;

    double arc_length() const;
    void validate(const Solenoid& sol) const;
};

/// Matter-wave parameters. hbar is configurable (desk-scale units); p is the
/// constant mechanical momentum magnitude along the semiclassical rays.
struct QuantumConfig {
    double hbar = 1.0;  // erg s
    double p = 1.0;     // g cm/s

    QuantumConfig(double hbar_, double p_);
    double energy(double mass) const { return p * p / (2.0 * mass); }
};

/// Line integral of a vector field along a polyline, adaptive per segment.
double line_integral(const std::vector<Vec3>& polyline,
                     const std::function<Vec3(const Vec3&)>& field,
                     double rel_tol = 1e-13);

/// Path phase of the semiclassical wavefunction,
///   phase = (1/hbar) [ p L(path) + (q/c) int_path A . dr ],
/// with L the arc length. The -E t term is common to both interfering paths
/// for equal-time arrivals and is excluded by contract.
double path_phase(const PathSpec& path, const QuantumConfig& qc, const Solenoid& sol,
                  double q, const UnitSystem& units);

struct TwoPathPhase {
    double delta_phi = 0.0;         // ab_phase + geometric_phase
    double ab_phase = 0.0;          // (q/(hbar c)) [int_right A - int_left A]
    double geometric_phase = 0.0;   // (p/hbar) (L_right - L_left)
    double winding = 0.0;           // enclosed flux / solenoid flux
    bool encloses_solenoid = false; // |winding| > 1/2; false flags a null AB phase
};

/// Phase difference between the two slit paths, defined as
/// phase(right) - phase(left): the closed loop right-forward/left-backward
/// runs counterclockwise seen from +z, so equal-length paths that bracket
/// the solenoid give delta_phi = + q Phi / (hbar c). Positive delta_phi
/// shifts the fringe comb toward +x (the right).
TwoPathPhase two_path_phase_difference(const PathSpec& left, const PathSpec& right,
                                       const QuantumConfig& qc, const Solenoid& sol,
                                       double q, const UnitSystem& units);

/// Quantum deflection of the double-slit pattern for equal-length paths:
///   theta_q = delta_phi_AB * lambda_dB / (2 pi d) = q Phi / (p c d),
/// hbar cancelling exactly. Signed + toward +x; for q > 0, B = +z the
/// deflection is toward the center-passage Lorentz direction (the right).
DeflectionResult quantum_deflection(const QuantumConfig& qc, const Solenoid& sol,
                                    double q, double slit_separation,
                                    const UnitSystem& units);

}  // namespace abdeflect
