#include "bohm/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohm/math_util.hpp"
#include "bohm/spectral.hpp"

namespace bohm {

namespace {

// Cubic Lagrange interpolation of a periodic grid array at x.
std::complex<double> cubic_at(const Grid1D& g, std::span<const std::complex<double>> f,
                              double x) {
    const int n = g.n_points();
    double fi = (x - g.x_min()) / g.dx();
    const double j_floor = std::floor(fi);
    const double s = fi - j_floor;
    const int j = static_cast<int>(j_floor);
    const auto w = cubic_weights(s);
    auto at = [&](int idx) {
        int m = idx % n;
        if (m < 0) m += n;
        return f[m];
    };
    return w.w0 * at(j - 1) + w.w1 * at(j) + w.w2 * at(j + 1) + w.w3 * at(j + 2);
}

}  // namespace

double marginal_velocity(std::span<const BranchTerm> branches, double mass,
                         double density_floor) {
    if (branches.empty()) {
        throw ConfigError("marginal_velocity: no branches");
    }
    std::complex<double> current_sum(0.0, 0.0);
    double density_sum = 0.0;
    for (const auto& b : branches) {
        if (b.weight < 0.0 || b.density < 0.0) {
            throw ConfigError("marginal_velocity: negative weight or density");
        }
        current_sum += b.weight * b.current;
        density_sum += b.weight * b.density;
    }
    if (!(density_sum > density_floor)) {
        throw NodeRegionError("node region: weighted density below floor");
    }
    return current_sum.real() / (mass * density_sum);
}

double velocity_from_parts(std::complex<double> psi, std::complex<double> dpsi,
                           double mass, double hbar, double density_floor) {
    const std::complex<double> p_psi = std::complex<double>(0.0, -hbar) * dpsi;
    const BranchTerm single{1.0, std::conj(psi) * p_psi, std::norm(psi)};
    return marginal_velocity(std::span(&single, 1), mass, density_floor);
}

double quantum_potential_from_parts(std::complex<double> psi, std::complex<double> d2psi,
                                    double velocity, double mass, double hbar,
                                    double density_floor) {
    const double rho = std::norm(psi);
    if (!(rho > density_floor)) {
        throw NodeRegionError("node region: density below floor");
    }
    const std::complex<double> p2_psi = -hbar * hbar * d2psi;
    const double kinetic_term = (p2_psi * std::conj(psi)).real() / (rho * 2.0 * mass);
    return kinetic_term - 0.5 * mass * velocity * velocity;
}

double WaveSource::velocity(double x, double t) const {
    const WaveSample s = sample(x, t);
    return velocity_from_parts(s.psi, s.dpsi, mass(), hbar(), density_floor());
}

double WaveSource::quantum_potential(double x, double t) const {
    const WaveSample s = sample(x, t);
    const double v = velocity_from_parts(s.psi, s.dpsi, mass(), hbar(), density_floor());
    return quantum_potential_from_parts(s.psi, s.d2psi, v, mass(), hbar(), density_floor());
}

GuidanceField::GuidanceField(const WaveFunction1D& psi)
    : psi_(psi),
      d1_(spectral_derivative(psi.grid(), psi.amplitudes(), 1)),
      d2_(spectral_derivative(psi.grid(), psi.amplitudes(), 2)) {}

WaveSample GuidanceField::sample(double x) const {
    return {cubic_at(psi_.grid(), psi_.amplitudes(), x), cubic_at(psi_.grid(), d1_, x),
            cubic_at(psi_.grid(), d2_, x)};
}

double GuidanceField::velocity(double x) const {
    const WaveSample s = sample(x);
    return velocity_from_parts(s.psi, s.dpsi, psi_.mass(), psi_.hbar(),
                               psi_.density_floor());
}

double GuidanceField::quantum_potential(double x, double v) const {
    const WaveSample s = sample(x);
    return quantum_potential_from_parts(s.psi, s.d2psi, v, psi_.mass(), psi_.hbar(),
                                        psi_.density_floor());
}

double GuidanceField::current_at_node(int i) const {
    return psi_.hbar() / psi_.mass() *
           std::imag(std::conj(psi_.amplitudes()[i]) * d1_[i]);
}

double GuidanceField::velocity_at_node(int i) const {
    return velocity_from_parts(psi_.amplitudes()[i], d1_[i], psi_.mass(), psi_.hbar(),
                               psi_.density_floor());
}

double velocity_field(const WaveFunction1D& psi, double x) {
    return GuidanceField(psi).velocity(x);
}

double quantum_potential(const WaveFunction1D& psi, double x, double v) {
    return GuidanceField(psi).quantum_potential(x, v);
}

void Trajectory::validate() const {
    if (times.size() != positions.size() || times.size() != velocities.size()) {
        throw ConfigError("Trajectory: array lengths differ");
    }
    for (size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(positions[i]) ||
            !std::isfinite(velocities[i])) {
            throw NumericalError("Trajectory: non-finite sample");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw ConfigError("Trajectory: times not strictly increasing");
        }
    }
}

Trajectory integrate_trajectory(const WaveSource& source, double x0, double t0,
                                double t1, double dt) {
    if (!(t1 > t0) || !(dt > 0.0)) {
        throw ConfigError("integrate_trajectory: need t1 > t0 and dt > 0");
    }
    const double span = t1 - t0;
    const double steps_real = span / dt;
    const long n_steps = std::lround(steps_real);
    if (n_steps < 1 || std::abs(steps_real - n_steps) > 1e-9 * steps_real) {
        throw ConfigError("integrate_trajectory: (t1 - t0) must be a multiple of dt");
    }
    const double frame_dt = source.frame_spacing();
    if (frame_dt > 0.0) {
        const double ratio = std::max(dt, frame_dt) / std::min(dt, frame_dt);
        if (std::abs(ratio - std::lround(ratio)) > 1e-9) {
            throw ConfigError(
                "integrate_trajectory: dt must divide the frame spacing or vice versa");
        }
    }
    const auto [x_lo, x_hi] = source.trajectory_bounds();

    Trajectory traj;
    traj.times.reserve(n_steps + 1);
    traj.positions.reserve(n_steps + 1);
    traj.velocities.reserve(n_steps + 1);

    auto fail = [&](const std::string& why) {
        return TrajectoryError("integrate_trajectory: " + why, std::move(traj));
    };
    auto eval = [&](double x, double t) -> double {
        if (!(x >= x_lo && x <= x_hi)) {
            throw fail("trajectory left the domain");
        }
        try {
            return source.velocity(x, t);
        } catch (const NodeRegionError&) {
            throw fail("trajectory entered a node region");
        }
    };

    double x = x0;
    for (long i = 0; i <= n_steps; ++i) {
        const double t = t0 + i * dt;
        const double v = eval(x, t);
        traj.times.push_back(t);
        traj.positions.push_back(x);
        traj.velocities.push_back(v);
        if (i == n_steps) {
            break;
        }
        const double k1 = v;
        const double k2 = eval(x + 0.5 * dt * k1, t + 0.5 * dt);
        const double k3 = eval(x + 0.5 * dt * k2, t + 0.5 * dt);
        const double k4 = eval(x + dt * k3, t + dt);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return traj;
}

std::vector<double> newton_residual(const Trajectory& traj, const WaveSource& source,
                                    const Potential1D& v, double grad_step) {
    traj.validate();
    const size_t n = traj.times.size();
    if (n < 5) {
        throw ConfigError("newton_residual: need at least 5 trajectory samples");
    }
    if (!(grad_step > 0.0)) {
        throw ConfigError("newton_residual: grad_step must be positive");
    }
    std::vector<double> res;
    res.reserve(n - 2);
    for (size_t i = 1; i + 1 < n; ++i) {
        res.push_back(guidance_diagnostics(traj, source, v, grad_step, i)
                          .acceleration_residual);
    }
    return res;
}

GuidanceDiagnostics guidance_diagnostics(const Trajectory& traj,
                                         const WaveSource& source, const Potential1D& v,
                                         double grad_step, size_t sample_index) {
    if (sample_index == 0 || sample_index + 1 >= traj.times.size()) {
        throw ConfigError("guidance_diagnostics: need an interior sample");
    }
    const double x = traj.positions[sample_index];
    const double t = traj.times[sample_index];
    const double q = source.quantum_potential(x, t);
    const double total = v.value(x) + q;
    // centered difference of the sampled velocities; differencing the
    // positions twice instead would put the roundoff floor at eps/dt^2
    const double dt = traj.times[sample_index] - traj.times[sample_index - 1];
    const double accel = (traj.velocities[sample_index + 1] -
                          traj.velocities[sample_index - 1]) /
                         (2.0 * dt);
    const double grad =
        (v.value(x + grad_step) + source.quantum_potential(x + grad_step, t) -
         v.value(x - grad_step) - source.quantum_potential(x - grad_step, t)) /
        (2.0 * grad_step);
    return {q, total, source.mass() * accel + grad};
}

StoredWaveHistory::StoredWaveHistory(Grid1D grid,
                                     std::vector<std::vector<std::complex<double>>> frames,
                                     double t0, double frame_dt, double mass, double hbar)
    : grid_(grid), frames_(std::move(frames)), t0_(t0), frame_dt_(frame_dt), mass_(mass),
      hbar_(hbar) {
    if (frames_.size() < 2) {
        throw ConfigError("StoredWaveHistory: need at least 2 frames");
    }
    if (!(frame_dt_ > 0.0)) {
        throw ConfigError("StoredWaveHistory: frame spacing must be positive");
    }
    frames_d1_.reserve(frames_.size());
    frames_d2_.reserve(frames_.size());
    for (const auto& f : frames_) {
        if (static_cast<int>(f.size()) != grid_.n_points()) {
            throw ConfigError("StoredWaveHistory: frame size does not match grid");
        }
        frames_d1_.push_back(spectral_derivative(grid_, f, 1));
        frames_d2_.push_back(spectral_derivative(grid_, f, 2));
    }
    double peak = 0.0;
    for (const auto& a : frames_.front()) {
        peak = std::max(peak, std::norm(a));
    }
    density_floor_ = 1e-12 * peak;
}

StoredWaveHistory StoredWaveHistory::from_propagation(const WaveFunction1D& psi0,
                                                      const Potential1D& v,
                                                      double frame_dt, int n_frames) {
    if (n_frames < 1) {
        throw ConfigError("StoredWaveHistory: need at least one step");
    }
    SplitStepPropagator prop(psi0, v, frame_dt);
    std::vector<std::vector<std::complex<double>>> frames;
    frames.reserve(n_frames + 1);
    frames.push_back(prop.amplitudes());
    for (int j = 0; j < n_frames; ++j) {
        prop.step();
        frames.push_back(prop.amplitudes());
    }
    return StoredWaveHistory(psi0.grid(), std::move(frames), psi0.time(), frame_dt,
                             psi0.mass(), psi0.hbar());
}

WaveSample StoredWaveHistory::sample(double x, double t) const {
    const int last = static_cast<int>(frames_.size()) - 1;
    const double ft = (t - t0_) / frame_dt_;
    if (ft < -1e-9 || ft > last + 1e-9) {
        throw InsufficientHistoryError("StoredWaveHistory: time outside stored range");
    }
    int j = static_cast<int>(std::floor(ft));
    j = std::clamp(j, 0, last - 1);
    const double theta = ft - j;

    auto blend = [&](const auto& frames) {
        const std::complex<double> lo = cubic_at(grid_, frames[j], x);
        const std::complex<double> hi = cubic_at(grid_, frames[j + 1], x);
        return (1.0 - theta) * lo + theta * hi;
    };
    return {blend(frames_), blend(frames_d1_), blend(frames_d2_)};
}

std::pair<double, double> StoredWaveHistory::trajectory_bounds() const {
    return {grid_.x_min() + 4.0 * grid_.dx(), grid_.x_max() - 4.0 * grid_.dx()};
}

FreeGaussianSource::FreeGaussianSource(double width_a, double mass, double hbar)
    : a_(width_a), mass_(mass), hbar_(hbar) {
    if (width_a <= 0.0 || mass <= 0.0 || hbar <= 0.0) {
        throw ConfigError("FreeGaussianSource: parameters must be positive");
    }
    density_floor_ = 1e-12 * std::sqrt(a_ / std::numbers::pi);
}

WaveSample FreeGaussianSource::sample(double x, double t) const {
    const double tau = a_ * hbar_ * t / mass_;
    const std::complex<double> denom(1.0, tau);
    const std::complex<double> alpha = a_ / denom;
    const std::complex<double> norm_factor =
        std::pow(a_ / std::numbers::pi, 0.25) / std::sqrt(denom);
    const std::complex<double> psi = norm_factor * std::exp(-0.5 * alpha * x * x);
    return {psi, -alpha * x * psi, (alpha * alpha * x * x - alpha) * psi};
}

double FreeGaussianSource::sigma(double t) const {
    const double tau = a_ * hbar_ * t / mass_;
    return std::sqrt((1.0 + tau * tau) / (2.0 * a_));
}

double FreeGaussianSource::velocity_exact(double x, double t) const {
    const double tau = a_ * hbar_ * t / mass_;
    return hbar_ * a_ * tau * x / (mass_ * (1.0 + tau * tau));
}

StationaryStateSource::StationaryStateSource(const WaveFunction1D& psi0, double energy)
    : field_(psi0), energy_(energy) {}

WaveSample StationaryStateSource::sample(double x, double t) const {
    WaveSample s = field_.sample(x);
    const std::complex<double> phase =
        std::polar(1.0, -energy_ * (t - field_.psi().time()) / field_.psi().hbar());
    return {phase * s.psi, phase * s.dpsi, phase * s.d2psi};
}

std::pair<double, double> StationaryStateSource::trajectory_bounds() const {
    const Grid1D& g = field_.psi().grid();
    return {g.x_min() + 4.0 * g.dx(), g.x_max() - 4.0 * g.dx()};
}

}  // namespace bohm
