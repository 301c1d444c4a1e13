#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "bohm/grid.hpp"

namespace bohm {

/// Complex-to-complex FFT of fixed size, backed by FFTW. An instance owns its
/// work buffers, so each thread should use its own; plan creation is
/// serialized internally (FFTW's planner is not thread-safe).
class Fft {
public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }

    /// In-place forward transform (no normalization).
    void forward(std::span<std::complex<double>> data) const;
    /// In-place inverse transform, scaled by 1/n so backward(forward(x)) == x.
    void backward(std::span<std::complex<double>> data) const;

private:
    struct Impl;
    int n_;
    std::unique_ptr<Impl> impl_;
};

/// Angular wavenumber of FFT bin j on a periodic grid of length L.
double fft_wavenumber(int j, int n, double length);

/// Spectral derivative of the given order (1 or 2) of a periodic grid
/// function. The Nyquist mode is zeroed for odd orders.
std::vector<std::complex<double>> spectral_derivative(
    const Grid1D& grid, std::span<const std::complex<double>> values, int order);

}  // namespace bohm
