#pragma once

#include "abdeflect/errors.hpp"
#include "abdeflect/units.hpp"
#include "abdeflect/vec3.hpp"

namespace abdeflect {

/// Infinite circular solenoid, axis along +z through the origin.
///
/// Surface current K = phi_hat * K with K = nI (n turns per unit length,
/// current I per turn, statamp/cm). The sign of K is the handedness:
/// K > 0 gives an interior field along +z.
struct Solenoid {
    double radius;           // R, cm
    double surface_current;  // K = nI, statamp/cm

    Solenoid(double radius_, double surface_current_);

    /// Signed interior field B_z = 4 pi K / c (gauss). Zero outside.
    double interior_field(const UnitSystem& units) const;

    /// Signed flux Phi = pi R^2 B = 4 pi^2 K R^2 / c.
    double flux(const UnitSystem& units) const;
};

/// A point charge with its kinematic state in the solenoid rest frame.
struct ChargeState {
    double q;       // statcoulomb
    double m;       // g
    Vec3 position;  // cm
    Vec3 velocity;  // cm/s

    ChargeState(double q_, double m_, const Vec3& position_, const Vec3& velocity_);
};

/// True when |v|/c is at or below `threshold` (default 0.1). The order-1/c^2
/// treatment assumes a slow charge; callers surface a warning otherwise.
bool is_nonrelativistic(const ChargeState& charge, const UnitSystem& units,
                        double threshold = 0.1);

/// Magnetic field of the moving charge through order 1/c^2:
///   B_q = (q/c) v x (r - r_q) / |r - r_q|^3.
/// Throws SingularityError if field_point coincides with the charge position.
Vec3 b_field_of_moving_charge(const ChargeState& charge, const Vec3& field_point,
                              const UnitSystem& units);

/// Uniform interior field of the unperturbed solenoid, z_hat * 4 pi K / c.
Vec3 solenoid_interior_b(const Solenoid& sol, const UnitSystem& units);

/// Field of the solenoid at a query point: the interior value for rho < R,
/// exactly zero for rho > R. Throws SingularityError on the surface.
Vec3 solenoid_b_field(const Solenoid& sol, const Vec3& field_point,
                      const UnitSystem& units);

/// Vector potential of the solenoid in the symmetric (Coulomb) gauge,
/// azimuthal:
///   A_phi = 2 pi K rho / c        (rho < R)
///   A_phi = Phi / (2 pi rho)      (rho > R)
/// Curl recovers the interior field inside and zero outside; the line
/// integral around any exterior loop enclosing the axis is Phi.
/// Throws SingularityError for points on the surface (rho = R).
Vec3 solenoid_vector_potential(const Solenoid& sol, const Vec3& field_point,
                               const UnitSystem& units);

}  // namespace abdeflect
