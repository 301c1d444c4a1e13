#include "bohm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohm/errors.hpp"
#include "bohm/math_util.hpp"

namespace bohm {

namespace {

double riemann_norm_sq(const std::vector<std::complex<double>>& amp, double dx) {
    double s = 0.0;
    for (const auto& a : amp) {
        s += std::norm(a);
    }
    return s * dx;
}

}  // namespace

WaveFunction1D::WaveFunction1D(Grid1D grid, std::vector<std::complex<double>> amplitudes,
                               double time, double mass, double hbar)
    : grid_(grid), amp_(std::move(amplitudes)), time_(time), mass_(mass), hbar_(hbar) {
    if (static_cast<int>(amp_.size()) != grid_.n_points()) {
        throw ConfigError("WaveFunction1D: amplitude count does not match grid");
    }
    if (mass_ <= 0.0 || hbar_ <= 0.0) {
        throw ConfigError("WaveFunction1D: mass and hbar must be positive");
    }
    for (const auto& a : amp_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw NumericalError("WaveFunction1D: non-finite amplitude");
        }
    }
    const double n2 = riemann_norm_sq(amp_, grid_.dx());
    if (!(n2 > 1e-300)) {
        throw NumericalError("degenerate wavefunction");
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amp_) {
        a *= inv;
    }
    double peak = 0.0;
    for (const auto& a : amp_) {
        peak = std::max(peak, std::norm(a));
    }
    density_floor_ = 1e-12 * peak;
}

double WaveFunction1D::norm() const {
    return std::sqrt(riemann_norm_sq(amp_, grid_.dx()));
}

WaveFunction1D WaveFunction1D::gaussian(const Grid1D& grid, double center, double width_a,
                                        double momentum, double mass, double hbar) {
    if (width_a <= 0.0) {
        throw ConfigError("gaussian: width parameter must be positive");
    }
    const double width = 1.0 / std::sqrt(width_a);
    if (grid.length() < 8.0 * width) {
        throw ConfigError("gaussian: domain narrower than 8 packet widths");
    }
    if (center - 4.0 * width < grid.x_min() || center + 4.0 * width > grid.x_max()) {
        throw ConfigError("gaussian: packet too close to the domain edge");
    }
    std::vector<std::complex<double>> amp(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        const double x = grid.x(i);
        const double d = x - center;
        amp[i] = std::polar(std::exp(-0.5 * width_a * d * d), momentum * x / hbar);
    }
    return WaveFunction1D(grid, std::move(amp), 0.0, mass, hbar);
}

WaveFunction1D WaveFunction1D::harmonic_ground_state(const Grid1D& grid, double k,
                                                     double mass, double hbar) {
    if (k <= 0.0) {
        throw ConfigError("harmonic_ground_state: spring constant must be positive");
    }
    const double omega = std::sqrt(k / mass);
    return gaussian(grid, 0.0, mass * omega / hbar, 0.0, mass, hbar);
}

WaveFunction1D normalize(const WaveFunction1D& psi) {
    return WaveFunction1D(psi.grid(), psi.amplitudes(), psi.time(), psi.mass(), psi.hbar());
}

std::vector<double> density(const WaveFunction1D& psi) {
    std::vector<double> rho(psi.amplitudes().size());
    for (size_t i = 0; i < rho.size(); ++i) {
        rho[i] = std::norm(psi.amplitudes()[i]);
    }
    return rho;
}

double position_mean(const WaveFunction1D& psi) {
    double s = 0.0;
    for (int i = 0; i < psi.grid().n_points(); ++i) {
        s += psi.grid().x(i) * std::norm(psi.amplitudes()[i]);
    }
    return s * psi.grid().dx();
}

double position_variance(const WaveFunction1D& psi) {
    const double mu = position_mean(psi);
    double s = 0.0;
    for (int i = 0; i < psi.grid().n_points(); ++i) {
        const double d = psi.grid().x(i) - mu;
        s += d * d * std::norm(psi.amplitudes()[i]);
    }
    return s * psi.grid().dx();
}

Potential1D Potential1D::free_space() { return Potential1D(Kind::Free, 0.0); }

Potential1D Potential1D::harmonic(double k) {
    if (k <= 0.0) {
        throw ConfigError("Potential1D::harmonic: spring constant must be positive");
    }
    return Potential1D(Kind::Harmonic, k);
}

Potential1D Potential1D::from_samples(const Grid1D& grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.n_points()) {
        throw ConfigError("Potential1D: sample count does not match grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ConfigError("Potential1D: non-finite sample");
        }
    }
    Potential1D p(Kind::Samples, 0.0);
    p.samples_ = std::move(values);
    p.sample_x_min_ = grid.x_min();
    p.sample_dx_ = grid.dx();
    p.sample_n_ = grid.n_points();
    return p;
}

double Potential1D::value(double x) const {
    switch (kind_) {
        case Kind::Free:
            return 0.0;
        case Kind::Harmonic:
            return 0.5 * k_ * x * x;
        case Kind::Samples: {
            const double fi = (x - sample_x_min_) / sample_dx_;
            const int j = static_cast<int>(std::floor(fi));
            const double s = fi - j;
            const auto w = cubic_weights(s);
            auto at = [&](int idx) {
                int m = (idx % sample_n_ + sample_n_) % sample_n_;
                return samples_[m];
            };
            return w.w0 * at(j - 1) + w.w1 * at(j) + w.w2 * at(j + 1) + w.w3 * at(j + 2);
        }
    }
    return 0.0;
}

std::vector<double> Potential1D::values(const Grid1D& grid) const {
    if (kind_ == Kind::Samples) {
        if (grid.n_points() != sample_n_ || grid.x_min() != sample_x_min_) {
            throw ConfigError("Potential1D: sampled potential used with a different grid");
        }
        return samples_;
    }
    std::vector<double> out(grid.n_points());
    for (int i = 0; i < grid.n_points(); ++i) {
        out[i] = value(grid.x(i));
    }
    return out;
}

double Potential1D::max_abs(const Grid1D& grid) const {
    double m = 0.0;
    for (double v : values(grid)) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

}  // namespace bohm
