#pragma once

#include <complex>
#include <vector>

#include "bohm/spectral.hpp"
#include "bohm/wavefunction.hpp"

namespace bohm {

// Split-step spectral propagator with periodic boundaries: a half potential
// phase, a full kinetic phase applied in wavenumber space, and another half
// potential phase per step. Every factor is a pure phase, so each step is
// exactly unitary up to FFT roundoff.
//
// Precondition (checked at construction): dt * max|V| <= 1. The kinetic
// factor is diagonal in k-space and exact for any dt, so the splitting error
// is governed by the potential scale alone.
class SplitStepPropagator {
public:
    SplitStepPropagator(const WaveFunction1D& psi, const Potential1D& v, double dt);

    void step();
    void advance(int steps);

    /// Raw amplitudes of the current state (unit norm up to FFT roundoff).
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
    double time() const { return time_; }
    double dt() const { return dt_; }
    const Grid1D& grid() const { return grid_; }

    /// Current state as a wavefunction value.
    WaveFunction1D state() const;

private:
    Grid1D grid_;
    std::vector<std::complex<double>> amp_;
    double time_;
    double mass_;
    double hbar_;
    double dt_;
    Fft fft_;
    std::vector<std::complex<double>> half_potential_phase_;
    std::vector<std::complex<double>> kinetic_phase_;
};

/// Advance psi by steps * dt under potential v.
WaveFunction1D propagate(const WaveFunction1D& psi, const Potential1D& v, double dt,
                         int steps);

}  // namespace bohm
