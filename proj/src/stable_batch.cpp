// Built with -O3 -ffast-math so the loop below vectorizes against libmvec.

#include <cmath>
#include <cstddef>

#include "stable_batch.hpp"

namespace levyhit {

void stable_transform(double alpha, const double* u, const double* w, double* out, std::size_t n) {
    if (alpha == 1.0) {
#pragma omp simd
        for (std::size_t i = 0; i < n; ++i) out[i] = std::tan(u[i]);
        return;
    }
    if (alpha == 2.0) {
#pragma omp simd
        for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * std::sin(u[i]) * std::sqrt(w[i]);
        return;
    }
    // Chambers-Mallows-Stuck, symmetric case:
    //   sin(a U) / cos(U)^{1/a} * (cos((1 - a) U) / W)^{(1 - a)/a}
    const double ia = 1.0 / alpha;
    const double e = (1.0 - alpha) / alpha;
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) {
        const double ui = u[i];
        const double lg = -ia * std::log(std::cos(ui)) + e * (std::log(std::cos((1.0 - alpha) * ui)) - std::log(w[i]));
        out[i] = std::sin(alpha * ui) * std::exp(lg);
    }
}

}  // namespace levyhit

namespace levyhit::detail {

void uniform_to_exponential(double* v, std::size_t n) {
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) v[i] = -std::log(v[i]);
}

void uniform_to_normal(const double* a, const double* b, double* out, std::size_t n) {
    constexpr double two_pi = 6.283185307179586476925;
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(-2.0 * std::log(a[i])) * std::cos(two_pi * b[i]);
}

void uniform_to_angle(double* a, std::size_t n) {
    constexpr double pi = 3.141592653589793238463;
#pragma omp simd
    for (std::size_t i = 0; i < n; ++i) a[i] = pi * (a[i] - 0.5);
}

}  // namespace levyhit::detail
