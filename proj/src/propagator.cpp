#include "bohm/propagator.hpp"

#include <cmath>

#include "bohm/errors.hpp"

namespace bohm {

SplitStepPropagator::SplitStepPropagator(const WaveFunction1D& psi, const Potential1D& v,
                                         double dt)
    : grid_(psi.grid()),
      amp_(psi.amplitudes()),
      time_(psi.time()),
      mass_(psi.mass()),
      hbar_(psi.hbar()),
      dt_(dt),
      fft_(grid_.n_points()) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("propagate: dt must be positive");
    }
    const double v_max = v.max_abs(grid_);
    if (dt * v_max > 1.0) {
        throw ConfigError("propagate: dt * max|V| exceeds 1; reduce the step");
    }
    half_potential_phase_.resize(grid_.n_points());
    kinetic_phase_.resize(grid_.n_points());
    const auto v_nodes = v.values(grid_);
    for (int i = 0; i < grid_.n_points(); ++i) {
        half_potential_phase_[i] = std::polar(1.0, -0.5 * v_nodes[i] * dt / hbar_);
        const double k = fft_wavenumber(i, grid_.n_points(), grid_.length());
        kinetic_phase_[i] = std::polar(1.0, -hbar_ * k * k * dt / (2.0 * mass_));
    }
}

void SplitStepPropagator::step() {
    const int n = grid_.n_points();
    for (int i = 0; i < n; ++i) {
        amp_[i] *= half_potential_phase_[i];
    }
    fft_.forward(amp_);
    for (int i = 0; i < n; ++i) {
        amp_[i] *= kinetic_phase_[i];
    }
    fft_.backward(amp_);
    for (int i = 0; i < n; ++i) {
        amp_[i] *= half_potential_phase_[i];
    }
    time_ += dt_;
}

void SplitStepPropagator::advance(int steps) {
    for (int s = 0; s < steps; ++s) {
        step();
    }
    double norm_sq = 0.0;
    for (const auto& a : amp_) {
        norm_sq += std::norm(a);
    }
    norm_sq *= grid_.dx();
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-8 * std::max(1, steps / 1000)) {
        throw NumericalError("propagate: norm drifted beyond tolerance");
    }
}

WaveFunction1D SplitStepPropagator::state() const {
    return WaveFunction1D(grid_, amp_, time_, mass_, hbar_);
}

WaveFunction1D propagate(const WaveFunction1D& psi, const Potential1D& v, double dt,
                         int steps) {
    if (steps < 0) {
        throw ConfigError("propagate: steps must be nonnegative");
    }
    SplitStepPropagator prop(psi, v, dt);
    prop.advance(steps);
    return prop.state();
}

}  // namespace bohm
