#pragma once

#include <functional>
#include <string>
#include <utility>

#include "bohm/errors.hpp"
#include "bohm/experiment.hpp"
#include "bohm/trajectory_history.hpp"

namespace bohm {

/// Divergence during a detector-pair integration; carries the samples
/// accumulated before the failure.
struct DdeIntegrationError : NumericalError {
    DdeIntegrationError(const std::string& msg, TrajectoryHistory partial_hist)
        : NumericalError(msg), partial(std::move(partial_hist)) {}
    TrajectoryHistory partial;
};

/// Experiment configuration plus the retardation delay T: the light travel
/// time between the detectors, T = 2l/c when built from physical parameters.
struct RetardedConfig {
    ExperimentConfig base;
    double T = 0.0;

    static RetardedConfig with_delay(ExperimentConfig base, double delay);
    /// T derived from the base config's l and c_light.
    static RetardedConfig from_signal_speed(ExperimentConfig base);

    void validate() const;
};

/// Right-hand side of the delayed detector dynamics.
///
/// Before the delay elapses (t < T) each detector moves as if alone:
///   u_dot = sigmoid(t (2u - t)),  v_dot likewise in v.
/// From t >= T each detector sees the other at the delayed time:
///   u_dot = sigmoid(2 u t - 2 v(t-T) (t-T) - T (2t - T)),  u<->v mirrored.
/// T = 0 reduces exactly to pair_velocity. Delayed values come from hist;
/// lookups the history cannot serve raise InsufficientHistoryError.
std::pair<double, double> retarded_pair_velocity(double t, double u, double v,
                                                 const TrajectoryHistory& hist,
                                                 double T);

/// Method-of-steps RK4 integration of the delayed dynamics from (u0, v0).
/// The step is adjusted to h = T / ceil(T / dt) so delayed lookups land on
/// completed nodes and t = T is a step boundary.
TrajectoryHistory integrate_retarded(double u0, double v0, const RetardedConfig& cfg);

/// Solo single-detector run with the same stepper and step size as a paired
/// retarded run; pre-delay segments of paired runs match this bit for bit.
TrajectoryHistory integrate_single_detector(double w0, double t_final, double h);

/// Solve the implicit light-cone condition
///   t_k = t_i - |x_i - x_other(t_k)| / c
/// for the retarded time t_k by damped fixed-point iteration (converges for
/// source speeds below c). position must be defined on [t_lo, t_hi].
double retarded_time(double t_i, double x_i, const std::function<double(double)>& position,
                     double t_lo, double t_hi, double c_light);

/// Same, reading the other particle's position from the u channel of a
/// stored trajectory.
double retarded_time(double t_i, double x_i, const TrajectoryHistory& other,
                     double c_light);

/// Wrong-result screening parameter l*hbar / (m c d lambda); values >= 1
/// indicate the regime where the delayed model misfires (both or neither
/// detector firing).
double wrongness_parameter(double l, double m, double d, double lambda, double hbar,
                           double c_light);

}  // namespace bohm
