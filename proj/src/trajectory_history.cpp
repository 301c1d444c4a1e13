#include "bohm/trajectory_history.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/errors.hpp"
#include "bohm/math_util.hpp"

namespace bohm {

TrajectoryHistory::TrajectoryHistory(double step, size_t reserve) : h_(step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError("TrajectoryHistory: step must be positive");
    }
    t_.reserve(reserve);
    u_.reserve(reserve);
    v_.reserve(reserve);
    du_.reserve(reserve);
    dv_.reserve(reserve);
}

void TrajectoryHistory::append(double t, double u, double v, double u_dot, double v_dot) {
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(u_dot) ||
        !std::isfinite(v_dot)) {
        throw NumericalError("TrajectoryHistory: non-finite sample");
    }
    if (t_.empty()) {
        if (t != 0.0) {
            throw ConfigError("TrajectoryHistory: records start at t = 0");
        }
    } else if (std::abs(t - t_.back() - h_) > 1e-12 * std::max(1.0, std::abs(t))) {
        throw ConfigError("TrajectoryHistory: non-uniform spacing");
    }
    t_.push_back(t);
    u_.push_back(u);
    v_.push_back(v);
    du_.push_back(u_dot);
    dv_.push_back(v_dot);
}

double TrajectoryHistory::interpolate(const std::vector<double>& y,
                                      const std::vector<double>& d, double t) const {
    const double tol = 1e-9 * h_;
    if (t_.empty() || t < -tol || t > t_.back() + tol) {
        throw InsufficientHistoryError("insufficient history for delayed lookup");
    }
    const int last = static_cast<int>(t_.size()) - 1;
    int j = static_cast<int>(std::floor(t / h_));
    j = std::clamp(j, 0, last - 1);
    if (last == 0) {
        return y[0];
    }
    return hermite_cubic(t, t_[j], h_, y[j], d[j], y[j + 1], d[j + 1]);
}

double TrajectoryHistory::query_u(double t) const { return interpolate(u_, du_, t); }

double TrajectoryHistory::query_v(double t) const { return interpolate(v_, dv_, t); }

}  // namespace bohm
