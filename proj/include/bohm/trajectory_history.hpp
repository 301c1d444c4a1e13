#pragma once

#include <vector>

namespace bohm {

/// Dense record of a detector-pair trajectory: times 0, h, 2h, ... with the
/// reduced coordinates (u, v) and their stored derivatives. Queries between
/// nodes use cubic Hermite interpolation on (value, derivative) pairs, which
/// is O(h^4) for smooth data and matches the RK4 order of the integrators
/// that fill it.
class TrajectoryHistory {
public:
    explicit TrajectoryHistory(double step, size_t reserve = 0);

    void append(double t, double u, double v, double u_dot, double v_dot);

    double step() const { return h_; }
    size_t size() const { return t_.size(); }
    double t_back() const { return t_.back(); }

    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& v() const { return v_; }
    const std::vector<double>& u_dot() const { return du_; }
    const std::vector<double>& v_dot() const { return dv_; }

    double final_u_dot() const { return du_.back(); }
    double final_v_dot() const { return dv_.back(); }

    /// Interpolated values; error with InsufficientHistoryError outside
    /// [0, t_back].
    double query_u(double t) const;
    double query_v(double t) const;

private:
    double interpolate(const std::vector<double>& y, const std::vector<double>& d,
                       double t) const;

    double h_;
    std::vector<double> t_, u_, v_, du_, dv_;
};

}  // namespace bohm
