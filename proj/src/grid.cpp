#include "bohm/grid.hpp"

#include <cmath>

#include "bohm/errors.hpp"

namespace bohm {

Grid1D::Grid1D(double x_min, double x_max, int n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points), dx_((x_max - x_min) / n_points) {
    if (!(x_max > x_min)) {
        throw ConfigError("Grid1D: x_max must exceed x_min");
    }
    if (n_points < 8) {
        throw ConfigError("Grid1D: need at least 8 points");
    }
    if (!std::isfinite(dx_) || dx_ <= 0.0 ||
        std::abs(x_min_ + n_ * dx_ - x_max_) > 1e-12 * (std::abs(x_max_) + std::abs(x_min_) + 1.0)) {
        throw ConfigError("Grid1D: spacing inconsistent with endpoints");
    }
}

}  // namespace bohm
