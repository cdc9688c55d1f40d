#include "abdeflect/forces.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "quadrature_detail.hpp"

namespace abdeflect {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Lorentz force density on the surface strip at azimuth phi, integrated
// analytically in nothing: plain integrand at (phi, z).
//   dF/(dphi dz) = R (K/c) (-x sin(phi) + y cos(phi)) x B_q(surface point)
Vec3 surface_force_density(const Solenoid& sol, const ChargeState& charge,
                           const UnitSystem& units, double phi, double z) {
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    const Vec3 surface_point{sol.radius * cphi, sol.radius * sphi, z};
    const Vec3 bq = b_field_of_moving_charge(charge, surface_point, units);
    const Vec3 tangent{-sphi, cphi, 0.0};
    return (sol.radius * sol.surface_current / units.c) * cross(tangent, bq);
}

// z integral at fixed phi, compactified by z = z_q + a tan(u) so the
// algebraic 1/z^2..1/z^3 tails never get truncated. a is the transverse
// distance from the charge to the surface strip.
Vec3 z_integral_at_phi(const Solenoid& sol, const ChargeState& charge,
                       const UnitSystem& units, const QuadratureSpec& spec,
                       double phi, double inner_rel_tol) {
    const double dx = sol.radius * std::cos(phi) - charge.position.x;
    const double dy = sol.radius * std::sin(phi) - charge.position.y;
    const double a = spec.z_scale * std::hypot(dx, dy);
    if (a == 0.0)
        throw SingularityError("force_on_solenoid_quadrature: charge on the solenoid surface");

    Vec3 out;
    for (int comp = 0; comp < 3; ++comp) {
        auto f = [&](double u) {
            const double sec2 = 1.0 + std::tan(u) * std::tan(u);
            const double z = charge.position.z + a * std::tan(u);
            const Vec3 d = surface_force_density(sol, charge, units, phi, z);
            const double val = comp == 0 ? d.x : (comp == 1 ? d.y : d.z);
            return val * a * sec2;
        };
        auto [v, err] = detail::integrate(f, -kHalfPi, kHalfPi, inner_rel_tol);
        (void)err;
        if (comp == 0) out.x = v;
        else if (comp == 1) out.y = v;
        else out.z = v;
    }
    return out;
}

}  // namespace

void QuadratureSpec::validate() const {
    if (phi_points < 8) throw DomainError("QuadratureSpec: phi_points must be >= 8");
    if (max_phi_points < phi_points)
        throw DomainError("QuadratureSpec: max_phi_points below phi_points");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("QuadratureSpec: tolerances must be positive");
    if (!(z_scale > 0.0)) throw DomainError("QuadratureSpec: z_scale must be positive");
}

ForceSample force_on_solenoid_closed_form(const Solenoid& sol, const ChargePath& path,
                                          double t, const UnitSystem& units) {
    if (std::abs(path.x0) < 20.0 * sol.radius)
        throw DomainError("force_on_solenoid_closed_form: requires |x0| >= 20 R");
    const double vt = path.v * t;
    const double a2 = path.x0 * path.x0 + vt * vt;
    const double pref = 2.0 * kPi * path.q * path.v * sol.surface_current *
                        sol.radius * sol.radius / (units.c * units.c);
    const Vec3 force{pref * (path.x0 * path.x0 - vt * vt) / (a2 * a2),
                     pref * 2.0 * path.x0 * vt / (a2 * a2), 0.0};
    return {t, force, ForceTarget::OnSolenoid, ForceMethod::ClosedForm};
}

ForceSample force_on_solenoid_quadrature(const Solenoid& sol, const ChargeState& charge,
                                         const QuadratureSpec& spec,
                                         const UnitSystem& units, double t) {
    spec.validate();
    const double rho_q = std::hypot(charge.position.x, charge.position.y);
    if (std::abs(rho_q - sol.radius) <= 1e-12 * sol.radius)
        throw SingularityError("force_on_solenoid_quadrature: charge on the solenoid surface");

    // Inner integrals are pushed well below the outer target so the
    // trapezoid doubling sees only azimuthal error.
    const double inner_rel_tol = spec.rel_tol * 1e-2;

    // Equally spaced trapezoid on the periodic azimuth; node reuse on doubling.
    int n = spec.phi_points;
    std::vector<Vec3> nodes(n);
    for (int i = 0; i < n; ++i)
        nodes[i] = z_integral_at_phi(sol, charge, units, spec, 2.0 * kPi * i / n,
                                     inner_rel_tol);

    auto average = [](const std::vector<Vec3>& v) {
        Vec3 s;
        for (const auto& x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    Vec3 prev = average(nodes) * (2.0 * kPi);
    double achieved = std::numeric_limits<double>::infinity();
    while (n < spec.max_phi_points) {
        std::vector<Vec3> refined(2 * n);
        for (int i = 0; i < n; ++i) {
            refined[2 * i] = nodes[i];
            refined[2 * i + 1] = z_integral_at_phi(
                sol, charge, units, spec, 2.0 * kPi * (i + 0.5) / n, inner_rel_tol);
        }
        nodes = std::move(refined);
        n *= 2;
        const Vec3 cur = average(nodes) * (2.0 * kPi);
        achieved = (cur - prev).norm();
        const double tol = std::max(spec.abs_tol, spec.rel_tol * cur.norm());
        prev = cur;
        if (achieved <= tol)
            return {t, cur, ForceTarget::OnSolenoid, ForceMethod::SurfaceQuadrature};
    }
    throw QuadratureError("force_on_solenoid_quadrature: azimuthal rule did not converge",
                          achieved);
}

double integral_identity_check(double a, double z_max) {
    if (!(a > 0.0)) throw DomainError("integral_identity_check: requires a > 0");
    auto antiderivative = [a](double z) {
        if (std::isinf(z)) return std::copysign(2.0 / (3.0 * std::pow(a, 4)), z);
        const double s = z * z + a * a;
        return (3.0 * a * a * z + 2.0 * z * z * z) /
               (3.0 * std::pow(a, 4) * s * std::sqrt(s));
    };
    auto [numeric, err] = detail::integrate(
        [a](double z) { return std::pow(z * z + a * a, -2.5); }, -z_max, z_max, 1e-14);
    (void)err;
    return numeric - (antiderivative(z_max) - antiderivative(-z_max));
}

DipoleLine dipole_line_from_boost(const Solenoid& sol, const Vec3& velocity,
                                  double epsilon, const UnitSystem& units) {
    if (velocity.norm() >= 0.5 * units.c)
        throw DomainError("dipole_line_from_boost: requires |v| < 0.5 c");
    if (!(epsilon > 0.0)) throw DomainError("dipole_line_from_boost: epsilon must be positive");

    // Magnetic moment per unit length m = z_hat pi R^2 K / c; the solenoid
    // moves with -velocity in the primed frame, so the electric dipole
    // density is p = (-velocity/c) x m. (For velocity = +y v, K > 0 this is
    // -x_hat v K pi R^2 / c^2: +lambda sits toward -x, i.e. the left.)
    const Vec3 m_per_length{0.0, 0.0,
                            kPi * sol.radius * sol.radius * sol.surface_current / units.c};
    const Vec3 p_line = cross(-1.0 / units.c * velocity, m_per_length);

    const double p_mag = p_line.norm();
    if (p_mag == 0.0) return {0.0, epsilon, {-1.0, 0.0, 0.0}};
    return {p_mag / epsilon, epsilon, p_line / p_mag};
}

ForceSample force_on_charge_from_dipole_line(const DipoleLine& dl, double q,
                                             const Vec3& charge_pos, double t) {
    const Vec3 s{charge_pos.x, charge_pos.y, 0.0};  // lines run along z
    if (s.norm() < 10.0 * dl.epsilon)
        throw SingularityError(
            "force_on_charge_from_dipole_line: query closer than 10 epsilon to the line pair");

    const Vec3 plus_pos = 0.5 * dl.epsilon * dl.orientation;   // +lambda line
    const Vec3 minus_pos = -0.5 * dl.epsilon * dl.orientation; // -lambda line
    auto line_field = [](double lambda, const Vec3& line, const Vec3& at) {
        const Vec3 r{at.x - line.x, at.y - line.y, 0.0};
        return (2.0 * lambda / r.norm2()) * r;  // E = 2 lambda rho_hat / rho
    };
    const Vec3 e = line_field(dl.lambda, plus_pos, s) + line_field(-dl.lambda, minus_pos, s);
    return {t, q * e, ForceTarget::OnCharge, ForceMethod::DipoleLineElectrostatic};
}

ForceSample force_on_charge_dipole_extrapolated(const Solenoid& sol, const Vec3& velocity,
                                                double q, const Vec3& charge_pos,
                                                double epsilon, const UnitSystem& units,
                                                double t) {
    // The finite-epsilon force is even in epsilon at fixed dipole density,
    // so F(eps) = F0 + c2 eps^2 + O(eps^4) and one Richardson step removes
    // the quadratic term.
    const DipoleLine full = dipole_line_from_boost(sol, velocity, epsilon, units);
    const DipoleLine half = dipole_line_from_boost(sol, velocity, 0.5 * epsilon, units);
    const Vec3 f_full = force_on_charge_from_dipole_line(full, q, charge_pos, t).force;
    const Vec3 f_half = force_on_charge_from_dipole_line(half, q, charge_pos, t).force;
    return {t, (4.0 * f_half - f_full) / 3.0, ForceTarget::OnCharge,
            ForceMethod::DipoleLineElectrostatic};
}

}  // namespace abdeflect
