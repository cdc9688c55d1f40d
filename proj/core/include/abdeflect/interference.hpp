#pragma once

#include <optional>
#include <vector>

#include "abdeflect/errors.hpp"
#include "abdeflect/vec3.hpp"

namespace abdeflect {

/// Double-slit geometry in the Fraunhofer (far-field) regime.
struct SlitGeometry {
    double slit_width;       // a, cm
    double slit_separation;  // d, cm; a < d
    double screen_distance;  // L, cm
    double wavelength;       // lambda: 2 pi hbar / p for matter, optical for light

    SlitGeometry(double a, double d, double L, double lambda);

    double fringe_period() const { return wavelength * screen_distance / slit_separation; }
    double envelope_zero() const { return wavelength * screen_distance / slit_width; }
    /// L >= 100 d^2 / lambda; violations are reported as warnings, not errors.
    bool fraunhofer_ok() const;
};

enum class PatternModel { QuantumAB, ClassicalLag, DipoleLineElectrostatic, GlassPlate };
enum class CoveredSlit { Left, Right };

/// Retarding glass plate behind one slit: lag = (n_g - 1) t_g.
struct GlassPlate {
    double thickness;         // t_g, cm
    double refractive_index;  // n_g >= 1
    CoveredSlit covered_slit;

    GlassPlate(double thickness_, double refractive_index_, CoveredSlit covered_slit_);
    double lag() const { return (refractive_index - 1.0) * thickness; }
};

/// Sampled screen intensity. envelope_center and fringe_comb_offset are the
/// synthesis ground truth (screen positions, cm); measure_deflection
/// re-derives them from the samples alone.
struct FringePattern {
    SlitGeometry geometry;
    PatternModel model;
    std::vector<double> screen_x;   // cm
    std::vector<double> intensity;  // arbitrary units, >= 0
    double envelope_center = 0.0;
    double fringe_comb_offset = 0.0;
    double phase_offset = 0.0;  // the delta_phi fed to synthesis
};

/// Fraunhofer intensity with a slit phase offset delta_phi (phase of the
/// right slit minus the left):
///   I(x) = sinc^2(pi a x / (lambda L)) cos^2(pi d x / (lambda L) - delta_phi/2).
/// Positive delta_phi shifts the comb toward +x by delta_phi lambda L/(2 pi d);
/// the envelope stays centered at x = 0. Samples span the central envelope
/// lobe, a whole number of comb periods, symmetric about 0.
FringePattern synthesize_pattern(const SlitGeometry& geom, double phase_offset,
                                 int n_samples, PatternModel model);

/// Pattern for a longitudinal lag delta_y_rel = delta_y(right) - delta_y(left)
/// between the two sides. The advanced side behaves as a shortened path, so
/// delta_phi = -2 pi delta_y_rel / lambda and the deflection points toward
/// the lagging side. `model` tags the provenance of the lag.
FringePattern pattern_from_classical_lag(const SlitGeometry& geom, double delta_y_rel,
                                         int n_samples,
                                         PatternModel model = PatternModel::ClassicalLag);

/// Optical analogue: lag = (n_g - 1) t_g on the covered slit; deflection
/// toward the covered side, independent of the wavelength.
FringePattern pattern_from_glass_plate(const SlitGeometry& geom, const GlassPlate& plate,
                                       int n_samples);

struct DeflectionMeasurement {
    double theta = 0.0;           // comb offset / L, rad
    double envelope_shift = 0.0;  // envelope center / L, rad
    double comb_phase = 0.0;      // measured delta_phi (unwrapped toward the hint)
    double comb_offset = 0.0;     // screen position of the tracked comb tooth, cm
};

/// Recovers the fringe-comb offset and the envelope center from the samples.
///
/// The samples are split by linear least squares onto
/// {Chebyshev(x)} x {1, cos(2 pi x/P), sin(2 pi x/P)} (P the known comb
/// period), which demodulates the envelope exactly for the synthesized
/// model; peak positions then come from 3-point quadratic interpolation
/// around the discrete maxima of the envelope-normalized comb and of the
/// demodulated envelope. `comb_phase_hint` selects the comb tooth to track
/// (phase unwrapping across a sweep); without it the tooth nearest the
/// envelope center is used. Requires >= 32 samples per fringe.
DeflectionMeasurement measure_deflection(const FringePattern& pattern,
                                         std::optional<double> comb_phase_hint = {});

}  // namespace abdeflect
