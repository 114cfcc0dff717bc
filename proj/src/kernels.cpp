#include "levyhit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace levyhit {

namespace {

constexpr double kPi = std::numbers::pi;

const SymbolSpec& pick(const SymbolSpec& spec, KernelSymbol sym, SymbolSpec& holder) {
    if (sym == KernelSymbol::psi) return spec;
    holder = spec.maximal();
    return holder;
}

/// Decades plus a few multiples of the natural scales of the integrand.
std::vector<double> breaks_for(std::initializer_list<double> scales) {
    std::vector<double> b;
    for (int e = -12; e <= 12; ++e) b.push_back(std::pow(10.0, e));
    for (double s : scales) {
        if (!(s > 0.0) || !std::isfinite(s)) continue;
        for (double m : {0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0}) b.push_back(m * s);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

KernelValue finish(const QuadResult<double>& r, const char* what) {
    KernelValue k;
    k.value = r.value / kPi;
    k.achieved_tol = r.error / kPi;
    k.truncation_point = r.truncation;
    k.converged = r.converged;
    if (!std::isfinite(k.value)) throw NumericalError(std::string(what) + ": non-finite result", k.achieved_tol, r.truncation);
    if (!r.converged && r.error > 1e-6 * std::abs(r.value) + 1e-12)
        throw NumericalError(std::string(what) + ": quadrature did not converge", k.achieved_tol, r.truncation);
    return k;
}

double safe_inverse(const SymbolSpec& s, double u) {
    try {
        return s.psi_inverse(u);
    } catch (const Error&) {
        return 0.0;
    }
}

}  // namespace

std::string to_string(KappaStatus s) {
    switch (s) {
        case KappaStatus::transient: return "transient";
        case KappaStatus::recurrent: return "recurrent";
        default: return "indeterminate";
    }
}

KernelValue kernel_K(const SymbolSpec& spec0, double x, const QuadratureConfig& cfg, KernelSymbol sym) {
    cfg.validate();
    SymbolSpec holder = spec0;
    const SymbolSpec& spec = pick(spec0, sym, holder);
    x = std::abs(x);
    if (x == 0.0) return {};
    auto f = [&](double s) { return 1.0 / spec.psi_fast(s); };
    auto br = breaks_for({1.0 / x});
    return finish(quad::one_minus_cos(f, x, cfg, 0.0, br), "kernel_K");
}

KernelValue kernel_K_lambda(const SymbolSpec& spec0, double x, double lambda, const QuadratureConfig& cfg,
                            KernelSymbol sym) {
    cfg.validate();
    if (!(lambda > 0.0)) throw ArgumentError("kernel_K_lambda: lambda must be positive");
    SymbolSpec holder = spec0;
    const SymbolSpec& spec = pick(spec0, sym, holder);
    x = std::abs(x);
    if (x == 0.0) return {};
    auto f = [&](double s) { return 1.0 / (lambda + spec.psi_fast(s)); };
    auto br = breaks_for({1.0 / x, safe_inverse(spec, lambda)});
    return finish(quad::one_minus_cos(f, x, cfg, 0.0, br), "kernel_K_lambda");
}

KernelValue potential_u_lambda(const SymbolSpec& spec0, double x, double lambda, const QuadratureConfig& cfg,
                               KernelSymbol sym) {
    cfg.validate();
    if (!(lambda > 0.0)) throw ArgumentError("potential_u_lambda: lambda must be positive");
    SymbolSpec holder = spec0;
    const SymbolSpec& spec = pick(spec0, sym, holder);
    x = std::abs(x);
    const double sl = safe_inverse(spec, lambda);
    auto f = [&](double s) { return 1.0 / (lambda + spec.psi_fast(s)); };
    auto u0 = finish(quad::half_line(f, sl > 0.0 ? sl : 1.0, cfg), "potential_u_lambda");
    if (x == 0.0) return u0;
    if (x * sl <= 1.0) {
        auto kl = kernel_K_lambda(spec, x, lambda, cfg);
        KernelValue r;
        r.value = u0.value - kl.value;
        r.achieved_tol = u0.achieved_tol + kl.achieved_tol;
        r.truncation_point = std::max(u0.truncation_point, kl.truncation_point);
        r.converged = u0.converged && kl.converged;
        return r;
    }
    auto br = breaks_for({1.0 / x, sl});
    auto r = finish(quad::fourier(f, x, quad::Trig::cos, 0.0, cfg, 0.0, br), "potential_u_lambda");
    // u^lambda is a positive function; far out the integral is pure cancellation noise.
    if (r.value < 0.0 && -r.value <= std::max(10.0 * r.achieved_tol, 1e-14 * u0.value)) r.value = 0.0;
    return r;
}

double hitting_time_laplace(const SymbolSpec& spec, double x, double lambda, const QuadratureConfig& cfg) {
    if (x == 0.0) return 1.0;
    auto u0 = potential_u_lambda(spec, 0.0, lambda, cfg);
    auto kl = kernel_K_lambda(spec, x, lambda, cfg);
    return 1.0 - kl.value / u0.value;
}

std::complex<double> kernel_K_lambda_complex(const SymbolSpec& spec, double x, std::complex<double> lambda,
                                             const QuadratureConfig& cfg, double* error) {
    x = std::abs(x);
    if (x == 0.0) {
        if (error) *error = 0.0;
        return 0.0;
    }
    auto f = [&](double s) -> std::complex<double> { return 1.0 / (lambda + spec.psi_fast(s)); };
    double re = lambda.real() < 0.0 ? safe_inverse(spec, -lambda.real()) : 0.0;
    auto br = breaks_for({1.0 / x, safe_inverse(spec, std::abs(lambda)), re});
    auto r = quad::one_minus_cos(f, x, cfg, 0.0, br);
    if (error) *error = r.error / kPi;
    return r.value / kPi;
}

std::complex<double> potential_u0_complex(const SymbolSpec& spec, std::complex<double> lambda,
                                          const QuadratureConfig& cfg, double* error) {
    auto f = [&](double s) -> std::complex<double> { return 1.0 / (lambda + spec.psi_fast(s)); };
    double sl = safe_inverse(spec, std::abs(lambda));
    auto r = quad::half_line(f, sl > 0.0 ? sl : 1.0, cfg);
    if (error) *error = r.error / kPi;
    return r.value / kPi;
}

KappaResult transience_kappa(const SymbolSpec& spec, const QuadratureConfig& cfg) {
    static std::shared_mutex mu;
    static std::map<std::uint64_t, KappaResult> cache;
    const std::uint64_t key = spec.hash();
    {
        std::shared_lock lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto f = [&](double s) { return 1.0 / spec.psi_fast(s); };
    auto near = dyadic_integral(f, false, cfg, 1000);
    auto far = dyadic_integral(f, true, cfg, 1000);
    KappaResult k;
    k.at_zero = near.status;
    k.at_infinity = far.status;
    if (near.status == Regularity::not_regular || far.status == Regularity::not_regular) {
        k.status = KappaStatus::recurrent;
        k.value = 0.0;
        k.integral = std::numeric_limits<double>::infinity();
    } else if (near.status == Regularity::regular && far.status == Regularity::regular) {
        k.status = KappaStatus::transient;
        k.integral = near.value + far.value;
        k.value = kPi / k.integral;
    } else {
        k.status = KappaStatus::indeterminate;
        k.value = std::numeric_limits<double>::quiet_NaN();
    }
    std::unique_lock lk(mu);
    cache.emplace(key, k);
    return k;
}

GreenValue green_point_complement(const SymbolSpec& spec, double x, double y, const QuadratureConfig& cfg) {
    auto kx = kernel_K(spec, x, cfg);
    auto ky = kernel_K(spec, y, cfg);
    auto kd = kernel_K(spec, y - x, cfg);
    auto kap = transience_kappa(spec, cfg);
    if (kap.status == KappaStatus::indeterminate)
        throw NumericalError("green_point_complement: transience constant indeterminate", 0.0);
    GreenValue g;
    g.value = kx.value + ky.value - kd.value - kap.value * kx.value * ky.value;
    g.achieved_tol = kx.achieved_tol + ky.achieved_tol + kd.achieved_tol +
                     kap.value * (kx.achieved_tol * ky.value + ky.achieved_tol * kx.value);
    g.achieved_tol = std::max(g.achieved_tol, 1e-15 * (kx.value + ky.value + kd.value));
    if (g.value < 0.0) {
        if (-g.value <= 10.0 * g.achieved_tol) {
            g.value = 0.0;
            g.clamped = true;
        } else {
            throw NumericalError("green_point_complement: negative value beyond tolerance", g.achieved_tol);
        }
    }
    return g;
}

KernelTailBand kernel_tail_integral(const SymbolSpec& spec, double x, double a, bool wlsc_above_one,
                                    const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw ArgumentError("kernel_tail_integral: x must be positive");
    if (!(a > 0.0) || a > 1.0) throw ArgumentError("kernel_tail_integral: comparability coefficient must lie in (0, 1]");
    auto g = [&](double u) { return 1.0 / (spec.psi_star(u / x) * x); };
    auto r = dyadic_integral(g, true, cfg, 1000);
    if (r.status != Regularity::regular)
        throw NumericalError("kernel_tail_integral: tail integral of 1/psi* is " + to_string(r.status), 0.0,
                             r.truncation / x);
    KernelTailBand b;
    b.integral = r.value;
    b.a = a;
    b.lower = 2.0 / (kPi * kPi * kPi) * r.value;
    b.upper = 10.0 / (kPi * a) * r.value;
    if (wlsc_above_one) b.scaling_value = 1.0 / (x * spec.psi_fast(1.0 / x));
    return b;
}

}  // namespace levyhit
