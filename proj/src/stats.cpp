#include "bohm/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bohm/errors.hpp"

namespace bohm {

GridCdf::GridCdf(const Grid1D& grid, const std::vector<double>& density)
    : x_min_(grid.x_min()), dx_(grid.dx()) {
    if (static_cast<int>(density.size()) != grid.n_points()) {
        throw ConfigError("GridCdf: density size does not match grid");
    }
    cumulative_.resize(density.size());
    double acc = 0.0;
    for (size_t i = 0; i + 1 < density.size(); ++i) {
        cumulative_[i] = acc;
        acc += 0.5 * (density[i] + density[i + 1]) * dx_;
    }
    cumulative_.back() = acc;
    if (!(acc > 0.0)) {
        throw NumericalError("GridCdf: density integrates to zero");
    }
    for (auto& c : cumulative_) {
        c /= acc;
    }
}

double GridCdf::operator()(double x) const {
    const double fi = (x - x_min_) / dx_;
    if (fi <= 0.0) {
        return 0.0;
    }
    const size_t last = cumulative_.size() - 1;
    if (fi >= static_cast<double>(last)) {
        return 1.0;
    }
    const size_t j = static_cast<size_t>(fi);
    const double s = fi - j;
    return (1.0 - s) * cumulative_[j] + s * cumulative_[j + 1];
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw ConfigError("ks_distance: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}

}  // namespace bohm
