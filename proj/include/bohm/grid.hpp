#pragma once

namespace bohm {

/// Uniform periodic spatial grid on [x_min, x_max); node i sits at
/// x_min + i*dx with dx = (x_max - x_min)/n_points.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, int n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int n_points() const { return n_; }
    double dx() const { return dx_; }
    double length() const { return x_max_ - x_min_; }
    double x(int i) const { return x_min_ + i * dx_; }

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    int n_;
    double dx_;
};

}  // namespace bohm
