#include "abdeflect/em_fields.hpp"

#include <cmath>
#include <numbers>

namespace abdeflect {

namespace {
constexpr double kPi = std::numbers::pi;

// Relative half-width of the band around rho = R treated as "on the surface".
constexpr double kSurfaceBand = 1e-12;
}  // namespace

Solenoid::Solenoid(double radius_, double surface_current_)
    : radius(radius_), surface_current(surface_current_) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("Solenoid: radius must be positive and finite");
    if (!std::isfinite(surface_current))
        throw DomainError("Solenoid: surface current must be finite");
}

double Solenoid::interior_field(const UnitSystem& units) const {
    return 4.0 * kPi * surface_current / units.c;
}

double Solenoid::flux(const UnitSystem& units) const {
    return kPi * radius * radius * interior_field(units);
}

ChargeState::ChargeState(double q_, double m_, const Vec3& position_,
                         const Vec3& velocity_)
    : q(q_), m(m_), position(position_), velocity(velocity_) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw DomainError("ChargeState: mass must be positive and finite");
    if (!std::isfinite(q)) throw DomainError("ChargeState: charge must be finite");
    if (!position.is_finite() || !velocity.is_finite())
        throw DomainError("ChargeState: kinematic state must be finite");
}

bool is_nonrelativistic(const ChargeState& charge, const UnitSystem& units,
                        double threshold) {
    return charge.velocity.norm() <= threshold * units.c;
}

Vec3 b_field_of_moving_charge(const ChargeState& charge, const Vec3& field_point,
                              const UnitSystem& units) {
    const Vec3 r = field_point - charge.position;
    const double r2 = r.norm2();
    if (r2 == 0.0)
        throw SingularityError("b_field_of_moving_charge: field point coincides with the charge");
    const double r3 = r2 * std::sqrt(r2);
    return (charge.q / units.c) * cross(charge.velocity, r) / r3;
}

Vec3 solenoid_interior_b(const Solenoid& sol, const UnitSystem& units) {
    return {0.0, 0.0, sol.interior_field(units)};
}

Vec3 solenoid_b_field(const Solenoid& sol, const Vec3& field_point,
                      const UnitSystem& units) {
    const double rho = std::hypot(field_point.x, field_point.y);
    if (std::abs(rho - sol.radius) <= kSurfaceBand * sol.radius)
        throw SingularityError("solenoid_b_field: query point on the solenoid surface");
    if (rho < sol.radius) return solenoid_interior_b(sol, units);
    return {0.0, 0.0, 0.0};
}

Vec3 solenoid_vector_potential(const Solenoid& sol, const Vec3& field_point,
                               const UnitSystem& units) {
    if (!field_point.is_finite())
        throw DomainError("solenoid_vector_potential: non-finite field point");
    const double rho = std::hypot(field_point.x, field_point.y);
    if (rho == 0.0) return {0.0, 0.0, 0.0};  // on axis, by symmetry
    if (std::abs(rho - sol.radius) <= kSurfaceBand * sol.radius)
        throw SingularityError("solenoid_vector_potential: query point on the solenoid surface");

    double a_phi;
    if (rho < sol.radius) {
        a_phi = 2.0 * kPi * sol.surface_current * rho / units.c;
    } else {
        a_phi = sol.flux(units) / (2.0 * kPi * rho);
    }
    // phi_hat = (-y/rho, x/rho, 0)
    return {-a_phi * field_point.y / rho, a_phi * field_point.x / rho, 0.0};
}

}  // namespace abdeflect
