#pragma once

#include <cmath>
#include <numbers>

namespace bohm {

/// Logistic function 1/(1+e^{-x}), evaluated without overflow for any x.
/// The detector-rate exponents grow like t^2, so the naive form overflows
/// for long runs; this split form is total.
inline double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// Integral of exp(-2 y^2) over [lo, hi] via the scaled error function:
///   int exp(-2y^2) dy = sqrt(pi/8) * erf(sqrt(2) y).
/// Accurate to ~1e-15 relative (std::erf is correctly rounded to a few ulp).
inline double gauss2_integral(double lo, double hi) {
    constexpr double scale = 0.62665706865775012;  // sqrt(pi/8)
    const double s = std::numbers::sqrt2;
    return scale * (std::erf(s * hi) - std::erf(s * lo));
}

/// Cubic Hermite interpolation on [t0, t0+h] from endpoint values and
/// derivatives. O(h^4) for smooth data.
inline double hermite_cubic(double t, double t0, double h, double y0, double d0,
                            double y1, double d1) {
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0 +
           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

/// Four-point Lagrange weights for cubic interpolation at fractional offset
/// s in [0,1) past the second stencil point.
struct CubicWeights {
    double w0, w1, w2, w3;
};

inline CubicWeights cubic_weights(double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return {
        -s3 / 6.0 + s2 / 2.0 - s / 3.0,
        s3 / 2.0 - s2 - s / 2.0 + 1.0,
        -s3 / 2.0 + s2 / 2.0 + s,
        s3 / 6.0 - s / 6.0,
    };
}

}  // namespace bohm
