#pragma once

#include <cstdint>

namespace bohm {

/// Born-rule transport check on the free Gaussian: sample n positions from
/// |psi(0)|^2, carry each along its guidance trajectory to t = 1, and compare
/// the transported empirical distribution with |psi(1)|^2.
struct EquivarianceResult {
    double ks_distance;
    long n;
    double t_final;
};

struct EquivariancePlan {
    long n = 10000;
    std::uint64_t seed = 12345;
    double width_a = 1.0;
    double t_final = 1.0;
    double dt = 1e-3;
    double x_min = -20.0;
    double x_max = 20.0;
    int n_points = 1024;
};

EquivarianceResult run_equivariance(const EquivariancePlan& plan);

}  // namespace bohm
