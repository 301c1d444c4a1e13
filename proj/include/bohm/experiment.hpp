#pragma once

#include <complex>
#include <utility>

#include "bohm/trajectory_history.hpp"

namespace bohm {

/// Two-detector photon experiment: a photon is emitted from the origin as a
/// symmetric pair of wave-packets; free detector particles sit in Gaussian
/// packets at +/- l and acquire momentum p (towards the outside) when the
/// photon branch reaching them is occupied. The reduced coordinates are
///   u = x_R - l,   v = -(x_L + l),
/// each growing positive when its detector recoils. Default code units have
/// a = p/m = 1 and hbar = 1.
struct ExperimentConfig {
    double a = 1.0;        // packet width parameter (inverse length^2)
    double p = 1.0;        // momentum transferred on detection
    double m = 1.0;        // detector particle mass
    double l = 5.0;        // detector half-separation
    double c_light = 0.0;  // signal speed; 0 means delays are given directly
    double t_final = 10.0;
    double dt = 1e-3;
    double hbar = 1.0;

    void validate() const;
    bool code_units() const;
};

struct DetectorState {
    double u;
    double v;
    double t;
};

/// Gaussian detector packet with rigid translation (the free spreading of
/// the detector state is neglected): the envelope center moves at momentum/m
/// and the phase is the plane-wave phase momentum*x - momentum^2 t / (2m).
class GaussianPacket {
public:
    GaussianPacket(double center, double momentum, double width_a,
                   double phase_offset = 0.0);

    double center(double t, double mass = 1.0) const;
    std::complex<double> eval(double x, double t, double mass = 1.0,
                              double hbar = 1.0) const;
    /// d/dx of eval.
    std::complex<double> derivative(double x, double t, double mass = 1.0,
                                    double hbar = 1.0) const;

    double momentum() const { return momentum_; }
    double width_a() const { return width_a_; }

private:
    double center0_;
    double momentum_;
    double width_a_;
    double phase_offset_;
};

/// Coupled detector velocities (u_dot, v_dot) in code units:
///   u_dot = sigmoid(-2 t (v - u)),  v_dot = sigmoid(-2 t (u - v)).
std::pair<double, double> pair_velocity(const DetectorState& state);

/// Same velocities evaluated from the two-branch configuration-space
/// wavefunction via the marginal guidance rule, for general (a, p, m).
/// Returns (xL_dot, xR_dot). Independent cross-check of pair_velocity.
std::pair<double, double> pair_velocity_from_wavefunction(double x_l, double x_r,
                                                          double t,
                                                          const ExperimentConfig& cfg);

/// Detector velocity when only one detector is present: sigmoid(t (2w - t)).
double single_detector_velocity(double w, double t);

/// Integrate the coupled pair from (u0, v0) at t = 0 with fixed-step RK4.
TrajectoryHistory integrate_pair(double u0, double v0, const ExperimentConfig& cfg);

/// Residual of the closed-form first integral of the coupled equations:
/// with w = u - (u0+v0)/2 and w0 = (u0-v0)/2,
///   integral(exp(-2y^2), -w0..w0) - integral(exp(-2y^2), t-w..w).
/// Zero along exact trajectories.
double implicit_solution_residual(double u, double t, double u0, double v0);

}  // namespace bohm
