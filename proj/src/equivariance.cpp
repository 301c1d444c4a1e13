#include "bohm/equivariance.hpp"

#include <cmath>

#include "bohm/ensemble.hpp"
#include "bohm/errors.hpp"
#include "bohm/guidance.hpp"
#include "bohm/rng.hpp"
#include "bohm/stats.hpp"

namespace bohm {

EquivarianceResult run_equivariance(const EquivariancePlan& plan) {
    if (plan.n < 2) {
        throw ConfigError("equivariance: need at least 2 samples");
    }
    const Grid1D grid(plan.x_min, plan.x_max, plan.n_points);
    const WaveFunction1D psi0 = WaveFunction1D::gaussian(grid, 0.0, plan.width_a);
    const long n_steps = std::lround(plan.t_final / plan.dt);
    const auto history = StoredWaveHistory::from_propagation(
        psi0, Potential1D::free_space(), plan.dt, static_cast<int>(n_steps));

    const double scale = std::sqrt(1.0 / (2.0 * plan.width_a));
    std::vector<double> transported;
    transported.reserve(plan.n);
    for (long i = 0; i < plan.n; ++i) {
        auto rng = SplitMix64::stream(plan.seed, static_cast<std::uint64_t>(i));
        const double x0 = scale * rng.normal_pair().first;
        const Trajectory traj =
            integrate_trajectory(history, x0, 0.0, plan.t_final, plan.dt);
        transported.push_back(traj.positions.back());
    }

    const WaveFunction1D psi_final(grid, history.frame(history.n_frames() - 1),
                                   plan.t_final);
    const GridCdf cdf(grid, density(psi_final));
    return {ks_distance(std::move(transported), cdf), plan.n, plan.t_final};
}

}  // namespace bohm
