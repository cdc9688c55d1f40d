#pragma once

// Internal adaptive 1-D quadrature helpers, backed by Boost.Math
// Gauss-Kronrod. Not part of the installed API.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <utility>

namespace abdeflect::detail {

using gk15 = boost::math::quadrature::gauss_kronrod<double, 15>;

/// Adaptive integral of f over [a, b] (either bound may be infinite).
/// Returns {value, error_estimate}.
template <typename F>
std::pair<double, double> integrate(F&& f, double a, double b,
                                    double rel_tol = 1e-12, int max_depth = 15) {
    double err = 0.0;
    const double val = gk15::integrate(std::forward<F>(f), a, b, max_depth, rel_tol, &err);
    return {val, err};
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace abdeflect::detail
