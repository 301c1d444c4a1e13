#pragma once

#include <functional>
#include <vector>

#include "bohm/grid.hpp"

namespace bohm {

/// Cumulative distribution of a density sampled on a grid (trapezoid rule,
/// linear interpolation between nodes, normalized to end at 1).
class GridCdf {
public:
    GridCdf(const Grid1D& grid, const std::vector<double>& density);

    double operator()(double x) const;

private:
    double x_min_;
    double dx_;
    std::vector<double> cumulative_;
};

/// Kolmogorov-Smirnov distance between the empirical distribution of samples
/// and a reference CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace bohm
