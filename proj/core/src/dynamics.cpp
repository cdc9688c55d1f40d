#include "abdeflect/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "quadrature_detail.hpp"

namespace abdeflect {

namespace {

constexpr double kPi = std::numbers::pi;

// C_m = 2 pi q K R^2 / (m c^2); the closed forms are all built from it.
double lag_prefactor(const Solenoid& sol, const ChargeState& charge,
                     const UnitSystem& units) {
    return 2.0 * kPi * charge.q * sol.surface_current * sol.radius * sol.radius /
           (charge.m * units.c * units.c);
}

// Force per unit mass on the charge at transverse position (x, y): the
// negative of the closed-form force on the solenoid with x0 -> x, vt -> y.
Vec3 charge_acceleration_closed(const TrajectoryConfig& cfg, const Solenoid& sol,
                                const ChargeState& charge, const UnitSystem& units,
                                double x, double y) {
    const double a2 = x * x + y * y;
    const double pref = 2.0 * kPi * charge.q * cfg.v * sol.surface_current *
                        sol.radius * sol.radius / (units.c * units.c);
    return Vec3{-pref * (x * x - y * y) / (a2 * a2),
                -pref * 2.0 * x * y / (a2 * a2), 0.0} / charge.m;
}

Vec3 charge_acceleration_dipole(const TrajectoryConfig& cfg, const Solenoid& sol,
                                const ChargeState& charge, const UnitSystem& units,
                                double x, double y) {
    const double eps = 1e-3 * std::abs(cfg.x0);
    const Vec3 f = force_on_charge_dipole_extrapolated(sol, {0.0, cfg.v, 0.0}, charge.q,
                                                       {x, y, 0.0}, eps, units)
                       .force;
    return f / charge.m;
}

// Analytic lag accumulated beyond time T (same for the entry tail):
//   int_T^inf delta_ydot dt = C_m sign(x0) (pi/2 - atan(v T / |x0|)) / v.
double lag_tail_beyond(const TrajectoryConfig& cfg, double cm, double t_abs) {
    return cm * std::copysign(1.0, cfg.x0) *
           (kPi / 2.0 - std::atan(cfg.v * t_abs / std::abs(cfg.x0))) / cfg.v;
}

}  // namespace

void TrajectoryConfig::validate() const {
    if (!(std::abs(x0) > 0.0) || !std::isfinite(x0))
        throw DomainError("TrajectoryConfig: x0 must be nonzero and finite");
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError("TrajectoryConfig: v must be positive and finite");
    if (!(t_span.first < 0.0) || !(t_span.second > 0.0))
        throw DomainError("TrajectoryConfig: t_span must bracket the closest approach");
    if (!(step_tolerance > 0.0))
        throw DomainError("TrajectoryConfig: step_tolerance must be positive");
}

DeflectionResult integrate_trajectory(const TrajectoryConfig& cfg, const Solenoid& sol,
                                      const ChargeState& charge, const UnitSystem& units) {
    cfg.validate();
    const double cm = lag_prefactor(sol, charge, units);
    const double kappa = std::abs(cm) / (cfg.v * std::abs(cfg.x0));
    if (kappa > 1e-2)
        throw DomainError("integrate_trajectory: coupling too strong for the impulse "
                          "comparison (kappa > 1e-2)");

    DeflectionResult result;
    result.coupling_kappa = kappa;
    result.weak_coupling = kappa <= 1e-3;

    const double t_unit = std::abs(cfg.x0) / cfg.v;
    const double t0 = cfg.t_span.first * t_unit;
    const double t1 = cfg.t_span.second * t_unit;

    // State is the perturbation (dx, dy, dvx, dvy). Entry conditions come
    // from the closed form: delta_v exactly, delta_y from the analytic entry
    // tail, delta_x referenced to zero at t0 (its absolute value is not an
    // observable here; only delta_vx is).
    using State = std::array<double, 4>;
    const Vec3 dv0 = closed_form_velocity_change(cfg, sol, charge, t0, units);
    const double entry_tail = lag_tail_beyond(cfg, cm, -t0);

    auto make_system = [&](bool true_path) {
        return [&, true_path](const State& s, State& dsdt, double t) {
            const double x = cfg.x0 + (true_path ? s[0] : 0.0);
            const double y = cfg.v * t + (true_path ? s[1] : 0.0);
            const Vec3 acc = cfg.force_source == ForceSource::ClosedForm
                                 ? charge_acceleration_closed(cfg, sol, charge, units, x, y)
                                 : charge_acceleration_dipole(cfg, sol, charge, units, x, y);
            dsdt[0] = s[2];
            dsdt[1] = s[3];
            dsdt[2] = acc.x;
            dsdt[3] = acc.y;
        };
    };

    namespace ode = boost::numeric::odeint;
    auto run = [&](bool true_path, VelocityHistory& hist) {
        State s{0.0, entry_tail, dv0.x, dv0.y};
        auto stepper = ode::make_controlled(cfg.step_tolerance, cfg.step_tolerance,
                                            ode::runge_kutta_dopri5<State>());
        const double dt_obs = (t1 - t0) / 800.0;
        ode::integrate_const(stepper, make_system(true_path), s, t0, t1, dt_obs,
                             [&](const State& st, double t) {
                                 hist.t.push_back(t);
                                 hist.delta_v.push_back({st[2], st[3], 0.0});
                             });
        return s;
    };

    const State end_true = run(true, result.delta_v_history);
    const State end_impulse = run(false, result.delta_v_history_impulse);

    result.tail_correction = entry_tail + lag_tail_beyond(cfg, cm, t1);
    result.delta_y_one_side = end_true[1] + lag_tail_beyond(cfg, cm, t1);
    result.delta_y_impulse = end_impulse[1] + lag_tail_beyond(cfg, cm, t1);
    return result;
}

Vec3 closed_form_velocity_change(const TrajectoryConfig& cfg, const Solenoid& sol,
                                 const ChargeState& charge, double t,
                                 const UnitSystem& units) {
    const double cm = lag_prefactor(sol, charge, units);
    const double vt = cfg.v * t;
    const double a2 = cfg.x0 * cfg.x0 + vt * vt;
    return {-cm * vt / a2, cm * cfg.x0 / a2, 0.0};
}

double one_sided_lag(const TrajectoryConfig& cfg, const Solenoid& sol,
                     const ChargeState& charge, const UnitSystem& units) {
    const double cm = lag_prefactor(sol, charge, units);
    return std::copysign(1.0, cfg.x0) * kPi * cm / cfg.v;
}

double one_sided_lag_time_quadrature(const TrajectoryConfig& cfg, const Solenoid& sol,
                                     const ChargeState& charge, const UnitSystem& units) {
    auto [val, err] = detail::integrate(
        [&](double t) {
            return closed_form_velocity_change(cfg, sol, charge, t, units).y;
        },
        -detail::kInf, detail::kInf, 1e-12);
    (void)err;
    return val;
}

DeflectionResult relative_displacement_and_angle(const TrajectoryConfig& cfg_left,
                                                 const TrajectoryConfig& cfg_right,
                                                 const Solenoid& sol,
                                                 const ChargeState& charge,
                                                 double slit_separation,
                                                 const UnitSystem& units) {
    if (!(slit_separation > 0.0))
        throw DomainError("relative_displacement_and_angle: slit separation must be positive");
    if (cfg_left.x0 != -cfg_right.x0 || cfg_left.v != cfg_right.v)
        throw DomainError("relative_displacement_and_angle: configs must differ only in "
                          "the sign of x0");
    const TrajectoryConfig& plus = cfg_right.x0 > 0.0 ? cfg_right : cfg_left;
    const TrajectoryConfig& minus = cfg_right.x0 > 0.0 ? cfg_left : cfg_right;

    DeflectionResult result;
    result.coupling_kappa = std::abs(lag_prefactor(sol, charge, units)) /
                            (plus.v * std::abs(plus.x0));
    result.weak_coupling = result.coupling_kappa <= 1e-3;
    result.delta_y_one_side = one_sided_lag(plus, sol, charge, units);
    result.delta_y_relative = result.delta_y_one_side - one_sided_lag(minus, sol, charge, units);

    // Deflection points toward the lagging side: theta = -delta_y_rel / d
    // with delta_y_rel = delta_y(+|x0|) - delta_y(-|x0|).
    result.theta = -result.delta_y_relative / slit_separation;

    if (sol.surface_current != 0.0) {
        const ChargeState beam{charge.q, charge.m, {plus.x0, 0.0, 0.0}, {0.0, plus.v, 0.0}};
        const Vec3 lorentz = lorentz_reference_direction(sol, beam, units);
        const double along = result.theta * lorentz.x;
        if (along != 0.0)
            result.direction = along > 0.0 ? DeflectionDirection::TowardCenterLorentz
                                           : DeflectionDirection::OppositeCenterLorentz;
    }
    return result;
}

Vec3 lorentz_reference_direction(const Solenoid& sol, const ChargeState& charge,
                                 const UnitSystem& units) {
    if (charge.velocity.norm() == 0.0)
        throw DomainError("lorentz_reference_direction: zero velocity");
    if (sol.surface_current == 0.0)
        throw DomainError("lorentz_reference_direction: zero field, no reference");
    const Vec3 f = (charge.q / units.c) *
                   cross(charge.velocity, solenoid_interior_b(sol, units));
    return normalized(f);
}

}  // namespace abdeflect
