#include "bohm/experiment.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "bohm/errors.hpp"
#include "bohm/guidance.hpp"
#include "bohm/math_util.hpp"

namespace bohm {

void ExperimentConfig::validate() const {
    if (a <= 0.0 || p <= 0.0 || m <= 0.0 || l <= 0.0 || hbar <= 0.0) {
        throw ConfigError("ExperimentConfig: a, p, m, l, hbar must be positive");
    }
    if (c_light < 0.0) {
        throw ConfigError("ExperimentConfig: c_light must be nonnegative");
    }
    if (!(dt > 0.0)) {
        throw ConfigError("ExperimentConfig: dt must be positive");
    }
    if (t_final < 10.0) {
        throw ConfigError("ExperimentConfig: t_final must be at least 10 code units");
    }
}

bool ExperimentConfig::code_units() const {
    return std::abs(a - 1.0) < 1e-12 && std::abs(p / m - 1.0) < 1e-12 &&
           std::abs(hbar - 1.0) < 1e-12;
}

GaussianPacket::GaussianPacket(double center, double momentum, double width_a,
                               double phase_offset)
    : center0_(center), momentum_(momentum), width_a_(width_a),
      phase_offset_(phase_offset) {
    if (width_a <= 0.0) {
        throw ConfigError("GaussianPacket: width parameter must be positive");
    }
}

double GaussianPacket::center(double t, double mass) const {
    return center0_ + momentum_ / mass * t;
}

std::complex<double> GaussianPacket::eval(double x, double t, double mass,
                                          double hbar) const {
    const double d = x - center(t, mass);
    const double envelope = std::pow(width_a_ / std::numbers::pi, 0.25) *
                            std::exp(-0.5 * width_a_ * d * d);
    const double phase =
        (momentum_ * x - momentum_ * momentum_ * t / (2.0 * mass)) / hbar + phase_offset_;
    return std::polar(envelope, phase);
}

std::complex<double> GaussianPacket::derivative(double x, double t, double mass,
                                                double hbar) const {
    const double d = x - center(t, mass);
    const std::complex<double> log_slope(-width_a_ * d, momentum_ / hbar);
    return log_slope * eval(x, t, mass, hbar);
}

std::pair<double, double> pair_velocity(const DetectorState& state) {
    const double gap = state.v - state.u;
    return {sigmoid(-2.0 * state.t * gap), sigmoid(2.0 * state.t * gap)};
}

std::pair<double, double> pair_velocity_from_wavefunction(double x_l, double x_r,
                                                          double t,
                                                          const ExperimentConfig& cfg) {
    cfg.validate();
    const GaussianPacket left_rest(-cfg.l, 0.0, cfg.a);
    const GaussianPacket left_kicked(-cfg.l, -cfg.p, cfg.a);
    const GaussianPacket right_rest(cfg.l, 0.0, cfg.a);
    const GaussianPacket right_kicked(cfg.l, cfg.p, cfg.a);

    // Branch weights: the other detector's density in the same branch. The
    // photon coordinate is already integrated out (the two photon packets do
    // not overlap).
    const double w_photon_left = std::norm(right_rest.eval(x_r, t, cfg.m, cfg.hbar));
    const double w_photon_right = std::norm(right_kicked.eval(x_r, t, cfg.m, cfg.hbar));
    const double floor = 1e-12 * (cfg.a / std::numbers::pi);

    auto current = [&](const GaussianPacket& pkt, double x) {
        const std::complex<double> psi = pkt.eval(x, t, cfg.m, cfg.hbar);
        const std::complex<double> dpsi = pkt.derivative(x, t, cfg.m, cfg.hbar);
        return std::conj(psi) * (std::complex<double>(0.0, -cfg.hbar) * dpsi);
    };

    const std::array<BranchTerm, 2> left_branches{
        BranchTerm{w_photon_left, current(left_kicked, x_l),
                   std::norm(left_kicked.eval(x_l, t, cfg.m, cfg.hbar))},
        BranchTerm{w_photon_right, current(left_rest, x_l),
                   std::norm(left_rest.eval(x_l, t, cfg.m, cfg.hbar))},
    };
    const double xl_dot = marginal_velocity(std::span(left_branches), cfg.m, floor);

    const double w_l_left = std::norm(left_kicked.eval(x_l, t, cfg.m, cfg.hbar));
    const double w_l_right = std::norm(left_rest.eval(x_l, t, cfg.m, cfg.hbar));
    const std::array<BranchTerm, 2> right_branches{
        BranchTerm{w_l_left, current(right_rest, x_r),
                   std::norm(right_rest.eval(x_r, t, cfg.m, cfg.hbar))},
        BranchTerm{w_l_right, current(right_kicked, x_r),
                   std::norm(right_kicked.eval(x_r, t, cfg.m, cfg.hbar))},
    };
    const double xr_dot = marginal_velocity(std::span(right_branches), cfg.m, floor);

    return {xl_dot, xr_dot};
}

double single_detector_velocity(double w, double t) {
    return sigmoid(t * (2.0 * w - t));
}

TrajectoryHistory integrate_pair(double u0, double v0, const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.code_units()) {
        throw ConfigError("integrate_pair: requires code units a = p/m = hbar = 1");
    }
    const double h = cfg.dt;
    const long n_steps = static_cast<long>(std::ceil(cfg.t_final / h - 1e-9));
    TrajectoryHistory hist(h, n_steps + 1);

    double u = u0;
    double v = v0;
    for (long k = 0; k <= n_steps; ++k) {
        const double t = k * h;
        const auto [du, dv] = pair_velocity({u, v, t});
        hist.append(t, u, v, du, dv);
        if (k == n_steps) {
            break;
        }
        const double k1u = du, k1v = dv;
        const auto [k2u, k2v] =
            pair_velocity({u + 0.5 * h * k1u, v + 0.5 * h * k1v, t + 0.5 * h});
        const auto [k3u, k3v] =
            pair_velocity({u + 0.5 * h * k2u, v + 0.5 * h * k2v, t + 0.5 * h});
        const auto [k4u, k4v] = pair_velocity({u + h * k3u, v + h * k3v, t + h});
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return hist;
}

double implicit_solution_residual(double u, double t, double u0, double v0) {
    const double mid = 0.5 * (u0 + v0);
    const double w0 = 0.5 * (u0 - v0);
    const double w = u - mid;
    return gauss2_integral(-w0, w0) - gauss2_integral(t - w, w);
}

}  // namespace bohm
