#include "bohm/retarded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "bohm/errors.hpp"
#include "bohm/math_util.hpp"

namespace bohm {

RetardedConfig RetardedConfig::with_delay(ExperimentConfig base, double delay) {
    RetardedConfig cfg{base, delay};
    cfg.validate();
    return cfg;
}

RetardedConfig RetardedConfig::from_signal_speed(ExperimentConfig base) {
    if (!(base.c_light > 0.0)) {
        throw ConfigError("RetardedConfig: c_light must be positive to derive T");
    }
    RetardedConfig cfg{base, 2.0 * base.l / base.c_light};
    cfg.validate();
    return cfg;
}

void RetardedConfig::validate() const {
    base.validate();
    if (T < 0.0 || !std::isfinite(T)) {
        throw ConfigError("RetardedConfig: delay T must be nonnegative");
    }
    if (T > 0.0 && T < 1e-6) {
        throw ConfigError("RetardedConfig: positive delays below 1e-6 are not supported "
                          "(method-of-steps step underflows)");
    }
}

std::pair<double, double> retarded_pair_velocity(double t, double u, double v,
                                                 const TrajectoryHistory& hist,
                                                 double T) {
    if (T == 0.0) {
        return pair_velocity({u, v, t});
    }
    if (t < T) {
        return {single_detector_velocity(u, t), single_detector_velocity(v, t)};
    }
    const double td = t - T;
    const double v_del = hist.query_v(td);
    const double u_del = hist.query_u(td);
    const double shared = T * (2.0 * t - T);
    return {sigmoid(2.0 * u * t - 2.0 * v_del * td - shared),
            sigmoid(2.0 * v * t - 2.0 * u_del * td - shared)};
}

namespace {

// Step count and adjusted step for a delayed run: h divides T exactly so the
// switch at t = T falls on a node and delayed stage lookups stay within the
// completed history.
std::pair<double, long> delayed_step(double T, double dt_target, double t_final) {
    double h = dt_target;
    if (T > 0.0) {
        const double m = std::ceil(T / dt_target - 1e-9);
        h = T / m;
    }
    const long n_steps = static_cast<long>(std::ceil(t_final / h - 1e-9));
    return {h, n_steps};
}

}  // namespace

TrajectoryHistory integrate_retarded(double u0, double v0, const RetardedConfig& cfg) {
    cfg.validate();
    if (!cfg.base.code_units()) {
        throw ConfigError("integrate_retarded: requires code units a = p/m = hbar = 1");
    }
    const auto [h, n_steps] = delayed_step(cfg.T, cfg.base.dt, cfg.base.t_final);
    TrajectoryHistory hist(h, n_steps + 1);

    auto rhs = [&](double t, double u, double v) {
        return retarded_pair_velocity(t, u, v, hist, cfg.T);
    };

    double u = u0;
    double v = v0;
    try {
        auto [du, dv] = rhs(0.0, u, v);
        hist.append(0.0, u, v, du, dv);
        for (long k = 0; k < n_steps; ++k) {
            const double t = k * h;
            const double k1u = du, k1v = dv;
            const auto [k2u, k2v] =
                rhs(t + 0.5 * h, u + 0.5 * h * k1u, v + 0.5 * h * k1v);
            const auto [k3u, k3v] =
                rhs(t + 0.5 * h, u + 0.5 * h * k2u, v + 0.5 * h * k2v);
            const auto [k4u, k4v] = rhs(t + h, u + h * k3u, v + h * k3v);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            const double t_next = (k + 1) * h;
            std::tie(du, dv) = rhs(t_next, u, v);
            hist.append(t_next, u, v, du, dv);
        }
    } catch (const NumericalError& e) {
        throw DdeIntegrationError(std::string("integrate_retarded: ") + e.what(),
                                  std::move(hist));
    }
    return hist;
}

TrajectoryHistory integrate_single_detector(double w0, double t_final, double h) {
    if (!(h > 0.0) || !(t_final > 0.0)) {
        throw ConfigError("integrate_single_detector: need positive h and t_final");
    }
    const long n_steps = static_cast<long>(std::ceil(t_final / h - 1e-9));
    TrajectoryHistory hist(h, n_steps + 1);

    double w = w0;
    double dw = single_detector_velocity(w, 0.0);
    hist.append(0.0, w, w, dw, dw);
    for (long k = 0; k < n_steps; ++k) {
        const double t = k * h;
        const double k1 = dw;
        const double k2 = single_detector_velocity(w + 0.5 * h * k1, t + 0.5 * h);
        const double k3 = single_detector_velocity(w + 0.5 * h * k2, t + 0.5 * h);
        const double k4 = single_detector_velocity(w + h * k3, t + h);
        w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = (k + 1) * h;
        dw = single_detector_velocity(w, t_next);
        hist.append(t_next, w, w, dw, dw);
    }
    return hist;
}

double retarded_time(double t_i, double x_i,
                     const std::function<double(double)>& position, double t_lo,
                     double t_hi, double c_light) {
    if (!(c_light > 0.0)) {
        throw ConfigError("retarded_time: c_light must be positive");
    }
    auto light_cone = [&](double tk) {
        return t_i - std::abs(x_i - position(tk)) / c_light;
    };
    double tk = std::clamp(t_i, t_lo, t_hi);
    double prev_delta = std::numeric_limits<double>::infinity();
    double damping = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double target = light_cone(tk);
        if (target < t_lo - 1e-9 || target > t_hi + 1e-9) {
            throw InsufficientHistoryError("retarded_time: history does not reach the "
                                           "backward light cone");
        }
        target = std::clamp(target, t_lo, t_hi);
        const double next = tk + damping * (target - tk);
        const double delta = std::abs(next - tk);
        tk = next;
        if (delta < 1e-12) {
            return tk;
        }
        if (delta > prev_delta) {
            damping *= 0.5;  // oscillating iterates: damp the update
        }
        prev_delta = delta;
    }
    throw NumericalError("retarded_time: fixed-point iteration did not converge");
}

double retarded_time(double t_i, double x_i, const TrajectoryHistory& other,
                     double c_light) {
    return retarded_time(
        t_i, x_i, [&](double t) { return other.query_u(t); }, 0.0, other.t_back(),
        c_light);
}

double wrongness_parameter(double l, double m, double d, double lambda, double hbar,
                           double c_light) {
    if (l <= 0.0 || m <= 0.0 || d <= 0.0 || lambda <= 0.0 || hbar <= 0.0 ||
        c_light <= 0.0) {
        throw ConfigError("wrongness_parameter: all inputs must be positive");
    }
    return l * hbar / (m * c_light * d * lambda);
}

}  // namespace bohm
