#pragma once

// Numerical inversion of Laplace transforms: fixed-Talbot contour (complex
// transform evaluations) and Gaver-Stehfest (real evaluations, extended-precision
// weights and accumulation).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "levyhit/error.hpp"

namespace levyhit {

enum class InversionMethod { talbot, gaver_stehfest, automatic };

inline std::string to_string(InversionMethod m) {
    switch (m) {
        case InversionMethod::talbot: return "talbot";
        case InversionMethod::gaver_stehfest: return "gaver_stehfest";
        default: return "automatic";
    }
}

inline InversionMethod inversion_method_from_string(const std::string& s) {
    if (s == "talbot") return InversionMethod::talbot;
    if (s == "gaver_stehfest" || s == "stehfest") return InversionMethod::gaver_stehfest;
    if (s == "automatic" || s == "auto") return InversionMethod::automatic;
    throw ArgumentError("unknown inversion method '" + s + "'");
}

struct InversionConfig {
    InversionMethod method = InversionMethod::automatic;
    int talbot_nodes = 32;
    int stehfest_terms = 12;
    double target_rel_tol = 1e-5;
    /// Compare the result with an independent evaluation (second method or finite
    /// differences) and throw when they disagree beyond 10 * target_rel_tol.
    bool cross_check = false;

    void validate() const {
        if (talbot_nodes < 4) throw ArgumentError("InversionConfig: talbot_nodes must be >= 4");
        if (stehfest_terms < 8 || stehfest_terms % 2 != 0)
            throw ArgumentError("InversionConfig: stehfest_terms must be even and >= 8");
        if (stehfest_terms > 30) throw ArgumentError("InversionConfig: stehfest_terms must be <= 30");
        if (!(target_rel_tol > 0)) throw ArgumentError("InversionConfig: target_rel_tol must be positive");
    }
};

namespace laplace {

/// Stehfest weights V_k, k = 1..n, in long double.
inline std::vector<long double> stehfest_weights(int n) {
    std::vector<long double> fact(2 * n + 2, 1.0L);
    for (int i = 1; i < static_cast<int>(fact.size()); ++i) fact[i] = fact[i - 1] * i;
    const int h = n / 2;
    std::vector<long double> v(n + 1, 0.0L);
    for (int k = 1; k <= n; ++k) {
        long double s = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, h); ++j) {
            s += std::pow(static_cast<long double>(j), h) * fact[2 * j] /
                 (fact[h - j] * fact[j] * fact[j - 1] * fact[k - j] * fact[2 * j - k]);
        }
        v[k] = ((k + h) % 2 == 0 ? 1.0L : -1.0L) * s;
    }
    return v;
}

/// f(t) from real transform values F(s), s = k ln2 / t.
template <class F>
double gaver_stehfest(F&& transform, double t, int n) {
    if (!(t > 0)) throw ArgumentError("gaver_stehfest: t must be positive");
    thread_local std::vector<long double> weights;
    thread_local int cached = 0;
    if (cached != n) {
        weights = stehfest_weights(n);
        cached = n;
    }
    const long double a = std::numbers::ln2_v<long double> / t;
    long double sum = 0.0L;
    for (int k = 1; k <= n; ++k) {
        long double fk = static_cast<long double>(transform(static_cast<double>(k * a)));
        if (!std::isfinite(static_cast<double>(fk)))
            throw NumericalError("gaver_stehfest: non-finite transform value", 0.0);
        sum += weights[k] * fk;
    }
    return static_cast<double>(a * sum);
}

/// Fixed-Talbot contour s(theta) = r theta (cot theta + i), r = 2M/(5t).
/// Nodes whose exponential factor e^{Re(s) t} falls below e^{-60} are skipped.
template <class F>
double talbot(F&& transform, double t, int m) {
    if (!(t > 0)) throw ArgumentError("talbot: t must be positive");
    using C = std::complex<double>;
    const double r = 2.0 * m / (5.0 * t);
    double sum = 0.5 * std::exp(r * t) * std::real(C(transform(C(r, 0.0))));
    for (int k = 1; k < m; ++k) {
        const double th = k * std::numbers::pi / m;
        const double cot = std::cos(th) / std::sin(th);
        const C s(r * th * cot, r * th);
        if (s.real() * t < -60.0) continue;
        const double sigma = th + (th * cot - 1.0) * cot;
        const C term = std::exp(s * t) * C(transform(s)) * C(1.0, sigma);
        if (!std::isfinite(term.real()))
            throw NumericalError("talbot: non-finite transform value on the contour", 0.0);
        sum += term.real();
    }
    return r / m * sum;
}

}  // namespace laplace

}  // namespace levyhit
