#include "abdeflect/interference.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abdeflect {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

// Whole comb periods covered by the sample window (even, symmetric about 0,
// kept inside the first envelope zeros so the envelope never vanishes).
int window_periods(const SlitGeometry& g) {
    const int m = 2 * static_cast<int>(std::floor(0.8 * g.slit_separation / g.slit_width));
    return std::max(m, 2);
}

// Vertex abscissa of the parabola through (x0-h, ym), (x0, y0), (x0+h, yp).
double parabola_vertex(double x0, double h, double ym, double y0, double yp) {
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return x0;
    return x0 + 0.5 * h * (ym - yp) / denom;
}

}  // namespace

SlitGeometry::SlitGeometry(double a, double d, double L, double lambda)
    : slit_width(a), slit_separation(d), screen_distance(L), wavelength(lambda) {
    if (!(a > 0.0) || !(d > 0.0) || !(L > 0.0) || !(lambda > 0.0))
        throw DomainError("SlitGeometry: all dimensions must be positive");
    if (!(a < d)) throw DomainError("SlitGeometry: requires slit_width < slit_separation");
}

bool SlitGeometry::fraunhofer_ok() const {
    return screen_distance >= 100.0 * slit_separation * slit_separation / wavelength;
}

GlassPlate::GlassPlate(double thickness_, double refractive_index_, CoveredSlit covered_slit_)
    : thickness(thickness_), refractive_index(refractive_index_), covered_slit(covered_slit_) {
    if (!(thickness >= 0.0)) throw DomainError("GlassPlate: thickness must be >= 0");
    if (!(refractive_index >= 1.0))
        throw DomainError("GlassPlate: refractive index below 1 rejected");
}

FringePattern synthesize_pattern(const SlitGeometry& geom, double phase_offset,
                                 int n_samples, PatternModel model) {
    if (n_samples < 2) throw DomainError("synthesize_pattern: needs at least 2 samples");
    if (!std::isfinite(phase_offset))
        throw DomainError("synthesize_pattern: non-finite phase offset");

    const double half = 0.5 * window_periods(geom) * geom.fringe_period();
    const double k_env = kPi * geom.slit_width / (geom.wavelength * geom.screen_distance);
    const double k_comb = kPi * geom.slit_separation / (geom.wavelength * geom.screen_distance);

    FringePattern p{geom, model, {}, {}, 0.0,
                    phase_offset * geom.fringe_period() / (2.0 * kPi), phase_offset};
    p.screen_x.resize(n_samples);
    p.intensity.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double x = -half + 2.0 * half * i / (n_samples - 1);
        const double env = sinc(k_env * x);
        const double comb = std::cos(k_comb * x - 0.5 * phase_offset);
        p.screen_x[i] = x;
        p.intensity[i] = env * env * comb * comb;
    }
    return p;
}

FringePattern pattern_from_classical_lag(const SlitGeometry& geom, double delta_y_rel,
                                         int n_samples, PatternModel model) {
    // An advanced right side (delta_y_rel > 0) acts as a shortened right
    // path: negative slit phase, comb shift toward the lagging left side.
    const double phase = -2.0 * kPi * delta_y_rel / geom.wavelength;
    return synthesize_pattern(geom, phase, n_samples, model);
}

FringePattern pattern_from_glass_plate(const SlitGeometry& geom, const GlassPlate& plate,
                                       int n_samples) {
    // Retardation on a slit demands a shorter geometric path on that side:
    // the comb moves toward the covered slit.
    const double sign = plate.covered_slit == CoveredSlit::Left ? -1.0 : 1.0;
    const double phase = sign * 2.0 * kPi * plate.lag() / geom.wavelength;
    return synthesize_pattern(geom, phase, n_samples, PatternModel::GlassPlate);
}

DeflectionMeasurement measure_deflection(const FringePattern& pattern,
                                         std::optional<double> comb_phase_hint) {
    const auto& xs = pattern.screen_x;
    const auto& in = pattern.intensity;
    const int n = static_cast<int>(xs.size());
    if (n < 8 || in.size() != xs.size())
        throw DomainError("measure_deflection: malformed pattern");

    const double h = xs[1] - xs[0];
    const double period = pattern.geometry.fringe_period();
    if (period / h < 32.0)
        throw DomainError("measure_deflection: undersampled pattern "
                          "(needs >= 32 samples per fringe)");

    // --- least-squares demodulation ---------------------------------------
    // I(x) = A(x) + B(x) cos(w x) + C(x) sin(w x) with A, B, C smooth; for
    // the synthesized model A is half the envelope. Fitted one comb period
    // at a time: over a single period a low-degree polynomial carries the
    // envelope to ~1e-15 yet cannot mimic the one-cycle comb, so the split
    // is unambiguous. (A single global polynomial basis would need degrees
    // whose oscillation aliases the comb.)
    const double w = 2.0 * kPi / period;
    const int chunk = std::clamp(static_cast<int>(std::lround(period / h)), 16, n);

    std::vector<double> envelope(n);
    int start = 0;
    while (start < n) {
        int len = std::min(chunk, n - start);
        if (n - (start + len) < std::max(24, chunk / 2) && start + len < n)
            len = n - start;  // fold a short tail into this chunk
        const double mid = 0.5 * (xs[start] + xs[start + len - 1]);
        const double span = std::max(0.5 * (xs[start + len - 1] - xs[start]), h);
        const int deg = std::min(11, len / 4 - 1);
        const int cols = 3 * (deg + 1);

        Eigen::MatrixXd basis(len, cols);
        Eigen::VectorXd rhs(len);
        std::vector<double> cheb(deg + 1);
        for (int r = 0; r < len; ++r) {
            const int i = start + r;
            const double u = (xs[i] - mid) / span;
            cheb[0] = 1.0;
            if (deg >= 1) cheb[1] = u;
            for (int k = 2; k <= deg; ++k) cheb[k] = 2.0 * u * cheb[k - 1] - cheb[k - 2];
            const double cw = std::cos(w * xs[i]);
            const double sw = std::sin(w * xs[i]);
            for (int k = 0; k <= deg; ++k) {
                basis(r, k) = cheb[k];
                basis(r, deg + 1 + k) = cheb[k] * cw;
                basis(r, 2 * (deg + 1) + k) = cheb[k] * sw;
            }
            rhs(r) = in[i];
        }
        const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
        for (int r = 0; r < len; ++r) {
            double acc = 0.0;
            for (int k = 0; k <= deg; ++k) acc += coef(k) * basis(r, k);
            envelope[start + r] = acc;
        }
        start += len;
    }

    // --- envelope center ---------------------------------------------------
    // Quadratic interpolation around the discrete maximum, at fringe-pitch
    // stride: the envelope curvature over one sample is below the demodulation
    // noise floor, over one fringe it is not.
    const int stride = std::max(1, static_cast<int>(std::lround(period / h)));
    int best = n / 2;
    for (int i = stride; i < n - stride; ++i)
        if (envelope[i] > envelope[best]) best = i;
    double env_center = xs[best];
    if (best - stride >= 0 && best + stride < n)
        env_center = parabola_vertex(xs[best], stride * h, envelope[best - stride],
                                     envelope[best], envelope[best + stride]);

    // --- comb tooth --------------------------------------------------------
    // Normalize out the envelope, pick the tooth nearest the hint (or the
    // envelope center), and interpolate its peak.
    const double env_max = *std::max_element(envelope.begin(), envelope.end());
    std::vector<double> comb(n);
    for (int i = 0; i < n; ++i)
        comb[i] = in[i] / std::max(envelope[i], 1e-6 * env_max);

    const double target = comb_phase_hint ? *comb_phase_hint / w : env_center;
    const int lo = std::max(1, static_cast<int>(std::floor((target - 0.55 * period - xs[0]) / h)));
    const int hi = std::min(n - 2, static_cast<int>(std::ceil((target + 0.55 * period - xs[0]) / h)));
    if (lo >= hi)
        throw DomainError("measure_deflection: comb search window outside the pattern");
    int tooth = lo;
    for (int i = lo; i <= hi; ++i)
        if (comb[i] > comb[tooth]) tooth = i;
    const double x_tooth =
        parabola_vertex(xs[tooth], h, comb[tooth - 1], comb[tooth], comb[tooth + 1]);

    double phase = w * x_tooth;
    if (comb_phase_hint)
        phase += 2.0 * kPi * std::round((*comb_phase_hint - phase) / (2.0 * kPi));

    DeflectionMeasurement out;
    out.comb_phase = phase;
    out.comb_offset = phase / w;
    out.theta = out.comb_offset / pattern.geometry.screen_distance;
    out.envelope_shift = env_center / pattern.geometry.screen_distance;
    return out;
}

}  // namespace abdeflect
