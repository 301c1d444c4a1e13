#pragma once

#include <complex>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "bohm/errors.hpp"
#include "bohm/propagator.hpp"
#include "bohm/wavefunction.hpp"

namespace bohm {

/// One branch of a configuration-space wavefunction after the coordinates
/// without trajectories have been integrated out: a nonnegative weight, the
/// complex current psi* (-i hbar d/dx) psi at the tracked coordinate, and the
/// density |psi|^2 there.
struct BranchTerm {
    double weight;
    std::complex<double> current;
    double density;
};

/// Branch-weighted guidance velocity Re(sum w*current) / (m * sum w*density).
/// Errors with NodeRegionError when the weighted density is at or below
/// density_floor.
double marginal_velocity(std::span<const BranchTerm> branches, double mass,
                         double density_floor);

/// Guidance velocity from pointwise wavefunction data; implemented as a
/// single-branch marginal so the two routes agree exactly.
double velocity_from_parts(std::complex<double> psi, std::complex<double> dpsi,
                           double mass, double hbar, double density_floor);

/// Quantum potential from pointwise data: Re(-hbar^2 psi''/psi)/(2m) - m v^2/2.
double quantum_potential_from_parts(std::complex<double> psi, std::complex<double> d2psi,
                                    double velocity, double mass, double hbar,
                                    double density_floor);

/// Wavefunction value and its first two spatial derivatives at one point.
struct WaveSample {
    std::complex<double> psi;
    std::complex<double> dpsi;
    std::complex<double> d2psi;
};

/// Time-indexed wavefunction source for trajectory integration.
class WaveSource {
public:
    virtual ~WaveSource() = default;

    virtual WaveSample sample(double x, double t) const = 0;
    virtual double mass() const = 0;
    virtual double hbar() const = 0;
    virtual double density_floor() const = 0;

    /// Interval trajectories must stay inside (infinite for analytic sources).
    virtual std::pair<double, double> trajectory_bounds() const {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }

    /// Spacing of stored time frames; 0 means continuous in t.
    virtual double frame_spacing() const { return 0.0; }

    double velocity(double x, double t) const;
    double quantum_potential(double x, double t) const;
};

/// Derivative-cached view of a single wavefunction: spectral first and second
/// derivatives on the grid, cubic interpolation off-grid.
class GuidanceField {
public:
    explicit GuidanceField(const WaveFunction1D& psi);

    WaveSample sample(double x) const;
    double velocity(double x) const;
    double quantum_potential(double x, double v) const;

    /// Probability current hbar/m * Im(psi* dpsi) at node i; finite at nodes.
    double current_at_node(int i) const;
    double velocity_at_node(int i) const;

    const WaveFunction1D& psi() const { return psi_; }

private:
    WaveFunction1D psi_;
    std::vector<std::complex<double>> d1_;
    std::vector<std::complex<double>> d2_;
};

/// Guidance velocity of a grid wavefunction at x.
double velocity_field(const WaveFunction1D& psi, double x);

/// Quantum potential of a grid wavefunction at x, given the local velocity.
double quantum_potential(const WaveFunction1D& psi, double x, double v);

/// Single-particle trajectory samples.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    std::vector<double> velocities;

    void validate() const;
};

/// Trajectory integration failure; carries the samples accumulated so far.
struct TrajectoryError : NumericalError {
    TrajectoryError(const std::string& msg, Trajectory partial_traj)
        : NumericalError(msg), partial(std::move(partial_traj)) {}
    Trajectory partial;
};

/// Integrate dx/dt = v(x, t) with fixed-step RK4 from (x0, t0) to t1.
/// Errors with TrajectoryError when the trajectory enters a node region or
/// leaves the source's domain.
Trajectory integrate_trajectory(const WaveSource& source, double x0, double t0,
                                double t1, double dt);

/// Newton's-law residual m x'' + d(V+Q)/dx along a trajectory, with centered
/// finite differences in time (trajectory spacing) and space (grad_step).
/// Returns one value per interior sample; requires at least 5 samples.
std::vector<double> newton_residual(const Trajectory& traj, const WaveSource& source,
                                    const Potential1D& v, double grad_step);

/// Pointwise second-law diagnostics at an interior trajectory sample.
struct GuidanceDiagnostics {
    double quantum_potential;
    double total_potential;        // V + Q
    double acceleration_residual;  // m x'' + d(V+Q)/dx
};

GuidanceDiagnostics guidance_diagnostics(const Trajectory& traj,
                                         const WaveSource& source, const Potential1D& v,
                                         double grad_step, size_t sample_index);

/// Dense record of a propagated wavefunction: frames at uniform time spacing
/// with precomputed spectral derivatives. Sampling is cubic in space and
/// linear in time. Safe to share read-only across threads.
class StoredWaveHistory : public WaveSource {
public:
    StoredWaveHistory(Grid1D grid, std::vector<std::vector<std::complex<double>>> frames,
                      double t0, double frame_dt, double mass, double hbar);

    /// Propagate psi0 under v with step frame_dt, recording every step
    /// (n_frames steps, n_frames+1 stored frames).
    static StoredWaveHistory from_propagation(const WaveFunction1D& psi0,
                                              const Potential1D& v, double frame_dt,
                                              int n_frames);

    WaveSample sample(double x, double t) const override;
    double mass() const override { return mass_; }
    double hbar() const override { return hbar_; }
    double density_floor() const override { return density_floor_; }
    std::pair<double, double> trajectory_bounds() const override;
    double frame_spacing() const override { return frame_dt_; }

    const Grid1D& grid() const { return grid_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t0_ + frame_dt_ * (static_cast<int>(frames_.size()) - 1); }
    int n_frames() const { return static_cast<int>(frames_.size()); }
    const std::vector<std::complex<double>>& frame(int j) const { return frames_[j]; }

private:
    Grid1D grid_;
    std::vector<std::vector<std::complex<double>>> frames_;
    std::vector<std::vector<std::complex<double>>> frames_d1_;
    std::vector<std::vector<std::complex<double>>> frames_d2_;
    double t0_;
    double frame_dt_;
    double mass_;
    double hbar_;
    double density_floor_;
};

/// Closed-form free Gaussian packet released at rest at the origin with
/// initial amplitude profile exp(-a x^2 / 2); exact at all (x, t).
class FreeGaussianSource : public WaveSource {
public:
    FreeGaussianSource(double width_a, double mass = 1.0, double hbar = 1.0);

    WaveSample sample(double x, double t) const override;
    double mass() const override { return mass_; }
    double hbar() const override { return hbar_; }
    double density_floor() const override { return density_floor_; }

    /// Density standard deviation at time t.
    double sigma(double t) const;
    /// Guidance velocity, closed form.
    double velocity_exact(double x, double t) const;

private:
    double a_;
    double mass_;
    double hbar_;
    double density_floor_;
};

/// Energy eigenstate evolved by a global phase: psi(x,t) = e^{-iEt/hbar} psi0(x).
class StationaryStateSource : public WaveSource {
public:
    StationaryStateSource(const WaveFunction1D& psi0, double energy);

    WaveSample sample(double x, double t) const override;
    double mass() const override { return field_.psi().mass(); }
    double hbar() const override { return field_.psi().hbar(); }
    double density_floor() const override { return field_.psi().density_floor(); }
    std::pair<double, double> trajectory_bounds() const override;

private:
    GuidanceField field_;
    double energy_;
};

}  // namespace bohm
