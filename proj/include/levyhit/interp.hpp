#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace levyhit {

/// Six-point Lagrange interpolation of samples y_i = f(x0 + i h); the stencil is
/// shifted inwards near the ends.
inline double lagrange_uniform(const std::vector<double>& y, double x0, double h, double x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
    double u = (x - x0) / h;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(u)) - 2;
    i = std::clamp<std::ptrdiff_t>(i, 0, std::max<std::ptrdiff_t>(n - 6, 0));
    const std::ptrdiff_t m = std::min<std::ptrdiff_t>(6, n);
    double s = 0.0;
    for (std::ptrdiff_t j = 0; j < m; ++j) {
        double w = 1.0;
        double uj = static_cast<double>(i + j);
        for (std::ptrdiff_t k = 0; k < m; ++k) {
            if (k == j) continue;
            double uk = static_cast<double>(i + k);
            w *= (u - uk) / (uj - uk);
        }
        s += w * y[i + j];
    }
    return s;
}

/// Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson slopes).
inline double pchip(const std::vector<double>& x, const std::vector<double>& y, double t) {
    const std::size_t n = x.size();
    if (n == 1) return y[0];
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    auto delta = [&](std::size_t j) { return (y[j + 1] - y[j]) / (x[j + 1] - x[j]); };
    auto slope = [&](std::size_t j) -> double {
        if (n == 2) return delta(0);
        if (j == 0) return delta(0);
        if (j == n - 1) return delta(n - 2);
        double d0 = delta(j - 1), d1 = delta(j);
        if (d0 * d1 <= 0.0) return 0.0;
        double h0 = x[j] - x[j - 1], h1 = x[j + 1] - x[j];
        double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
        return (w1 + w2) / (w1 / d0 + w2 / d1);
    };
    double h = x[k + 1] - x[k];
    double s = (t - x[k]) / h;
    double m0 = slope(k) * h, m1 = slope(k + 1) * h;
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y[k] + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y[k + 1] +
           (s3 - s2) * m1;
}

/// Piecewise-linear interpolation on increasing abscissae, clamped at the ends.
inline double linear_interp(const std::vector<double>& x, const std::vector<double>& y, double t) {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
    double w = (t - x[k]) / (x[k + 1] - x[k]);
    return (1.0 - w) * y[k] + w * y[k + 1];
}

}  // namespace levyhit
