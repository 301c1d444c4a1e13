#include "bohm/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>

#include "bohm/errors.hpp"

namespace bohm {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct Fft::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Fft::Fft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n < 2) {
        throw ConfigError("Fft: size must be at least 2");
    }
    std::lock_guard lock(planner_mutex());
    impl_->buf = fftw_alloc_complex(static_cast<size_t>(n));
    impl_->fwd = fftw_plan_dft_1d(n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_1d(n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard lock(planner_mutex());
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
    if (impl_->buf) fftw_free(impl_->buf);
}

void Fft::forward(std::span<std::complex<double>> data) const {
    std::memcpy(impl_->buf, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(impl_->fwd);
    std::memcpy(static_cast<void*>(data.data()), impl_->buf, sizeof(fftw_complex) * n_);
}

void Fft::backward(std::span<std::complex<double>> data) const {
    std::memcpy(impl_->buf, data.data(), sizeof(fftw_complex) * n_);
    fftw_execute(impl_->bwd);
    const double inv = 1.0 / n_;
    auto* out = reinterpret_cast<std::complex<double>*>(impl_->buf);
    for (int i = 0; i < n_; ++i) {
        data[i] = out[i] * inv;
    }
}

double fft_wavenumber(int j, int n, double length) {
    const int k = (j <= n / 2) ? j : j - n;
    return 2.0 * std::numbers::pi * k / length;
}

std::vector<std::complex<double>> spectral_derivative(
    const Grid1D& grid, std::span<const std::complex<double>> values, int order) {
    if (order != 1 && order != 2) {
        throw ConfigError("spectral_derivative: order must be 1 or 2");
    }
    const int n = grid.n_points();
    std::vector<std::complex<double>> work(values.begin(), values.end());
    Fft fft(n);
    fft.forward(work);
    const std::complex<double> i_unit(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        const double k = fft_wavenumber(j, n, grid.length());
        std::complex<double> factor = (order == 1) ? i_unit * k : std::complex<double>(-k * k, 0.0);
        if (order % 2 == 1 && n % 2 == 0 && j == n / 2) {
            factor = 0.0;  // Nyquist mode has no well-defined odd derivative
        }
        work[j] *= factor;
    }
    fft.backward(work);
    return work;
}

}  // namespace bohm
