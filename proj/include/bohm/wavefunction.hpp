#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bohm/grid.hpp"

namespace bohm {

/// Complex wavefunction sampled on a uniform periodic grid. Construction
/// normalizes to unit L2 norm (Riemann sum) and rejects non-finite or
/// zero-norm data.
class WaveFunction1D {
public:
    WaveFunction1D(Grid1D grid, std::vector<std::complex<double>> amplitudes,
                   double time = 0.0, double mass = 1.0, double hbar = 1.0);

    const Grid1D& grid() const { return grid_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
    double time() const { return time_; }
    double mass() const { return mass_; }
    double hbar() const { return hbar_; }

    /// Node floor: 1e-12 times the peak probability density at construction.
    double density_floor() const { return density_floor_; }

    /// L2 norm, Riemann sum on the grid.
    double norm() const;

    void set_time(double t) { time_ = t; }

    /// Zero-momentum-frame Gaussian packet exp(ip x) exp(-a (x-center)^2 / 2),
    /// normalized on the grid. Rejects packets too wide for the domain
    /// (requires at least 8 widths of clearance so periodic wrap-around stays
    /// below 1e-6).
    static WaveFunction1D gaussian(const Grid1D& grid, double center, double width_a,
                                   double momentum = 0.0, double mass = 1.0,
                                   double hbar = 1.0);

    /// Ground state of V = k x^2 / 2 centered at the origin.
    static WaveFunction1D harmonic_ground_state(const Grid1D& grid, double k,
                                                double mass = 1.0, double hbar = 1.0);

private:
    Grid1D grid_;
    std::vector<std::complex<double>> amp_;
    double time_;
    double mass_;
    double hbar_;
    double density_floor_;
};

/// Copy with unit L2 norm. Errors with "degenerate wavefunction" on ~zero
/// input norm.
WaveFunction1D normalize(const WaveFunction1D& psi);

/// Pointwise probability density |psi|^2 on the grid.
std::vector<double> density(const WaveFunction1D& psi);

/// Position expectation value integral(x |psi|^2 dx).
double position_mean(const WaveFunction1D& psi);

/// Position variance about the mean.
double position_variance(const WaveFunction1D& psi);

/// External potential: free space, harmonic k x^2 / 2, or grid samples.
class Potential1D {
public:
    static Potential1D free_space();
    static Potential1D harmonic(double k);
    static Potential1D from_samples(const Grid1D& grid, std::vector<double> values);

    /// Potential value at x (analytic where possible, cubic interpolation of
    /// samples otherwise).
    double value(double x) const;

    /// Values on the nodes of the given grid.
    std::vector<double> values(const Grid1D& grid) const;

    double max_abs(const Grid1D& grid) const;

private:
    enum class Kind { Free, Harmonic, Samples };
    Potential1D(Kind kind, double k) : kind_(kind), k_(k) {}

    Kind kind_;
    double k_ = 0.0;
    std::vector<double> samples_;
    double sample_x_min_ = 0.0, sample_dx_ = 0.0;
    int sample_n_ = 0;
};

}  // namespace bohm
