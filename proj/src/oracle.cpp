#include "levyhit/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "levyhit/kernels.hpp"

namespace levyhit {

namespace {

constexpr double kPi = std::numbers::pi;
using C = std::complex<double>;

double safe_inverse(const SymbolSpec& s, double u) {
    try {
        return s.psi_inverse(u);
    } catch (const Error&) {
        return 0.0;
    }
}

std::vector<double> tail_talbot(const SymbolSpec& spec, std::span<const double> xs, double t, int m,
                                const QuadratureConfig& qcfg) {
    // Contour nodes are shared by every x; u^lambda(0) is evaluated once per node.
    const double r = 2.0 * m / (5.0 * t);
    std::vector<double> sum(xs.size(), 0.0);
    for (int k = 0; k < m; ++k) {
        C s;
        C weight;
        if (k == 0) {
            s = r;
            weight = 0.5 * std::exp(r * t);
        } else {
            const double th = k * kPi / m;
            const double cot = std::cos(th) / std::sin(th);
            s = C(r * th * cot, r * th);
            if (s.real() * t < -60.0) continue;
            const double sigma = th + (th * cot - 1.0) * cot;
            weight = std::exp(s * t) * C(1.0, sigma);
        }
        double err0 = 0.0;
        const C u0 = potential_u0_complex(spec, s, qcfg, &err0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == 0.0) continue;
            double err = 0.0;
            const C kl = kernel_K_lambda_complex(spec, xs[i], s, qcfg, &err);
            const C term = weight * kl / (s * u0);
            if (!std::isfinite(term.real()))
                throw NumericalError("laplace_point_tail: non-finite transform on the Talbot contour", 0.0);
            sum[i] += term.real();
        }
    }
    for (auto& v : sum) v *= r / m;
    return sum;
}

std::vector<double> tail_stehfest(const SymbolSpec& spec, std::span<const double> xs, double t, int n,
                                  const QuadratureConfig& qcfg) {
    std::vector<double> out(xs.size(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) continue;
        out[i] = laplace::gaver_stehfest(
            [&](double lam) {
                double u0 = potential_u_lambda(spec, 0.0, lam, qcfg).value;
                double kl = kernel_K_lambda(spec, xs[i], lam, qcfg).value;
                return kl / (lam * u0);
            },
            t, n);
    }
    return out;
}

}  // namespace

InversionConfig point_tail_inversion() {
    InversionConfig c;
    c.method = InversionMethod::automatic;
    c.talbot_nodes = 20;
    c.stehfest_terms = 12;
    return c;
}

std::vector<double> laplace_point_tail(const SymbolSpec& spec, std::span<const double> xs, double t,
                                       const InversionConfig& icfg, const QuadratureConfig& qcfg) {
    icfg.validate();
    if (!(t > 0.0)) throw ArgumentError("laplace_point_tail: t must be positive");
    std::vector<double> ax(xs.begin(), xs.end());
    for (auto& x : ax) x = std::abs(x);
    std::vector<double> out;
    if (icfg.method == InversionMethod::gaver_stehfest) {
        out = tail_stehfest(spec, ax, t, icfg.stehfest_terms, qcfg);
    } else {
        try {
            out = tail_talbot(spec, ax, t, icfg.talbot_nodes, qcfg);
        } catch (const NumericalError& e) {
            if (icfg.method == InversionMethod::talbot) throw;
            out = tail_stehfest(spec, ax, t, icfg.stehfest_terms, qcfg);
        }
    }
    if (icfg.cross_check) {
        auto other = tail_stehfest(spec, ax, t, icfg.stehfest_terms, qcfg);
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (std::abs(other[i] - out[i]) > 10.0 * icfg.target_rel_tol * std::max(std::abs(out[i]), 1e-3))
                throw NumericalError("laplace_point_tail: Talbot and Gaver-Stehfest disagree at x = " +
                                         std::to_string(ax[i]),
                                     std::abs(other[i] - out[i]));
        }
    }
    // Inversion noise can leave the value marginally outside [0, 1].
    for (auto& v : out) v = std::clamp(v, 0.0, 1.0);
    return out;
}

double laplace_point_tail(const SymbolSpec& spec, double x, double t, const InversionConfig& icfg,
                          const QuadratureConfig& qcfg) {
    double xs[] = {x};
    return laplace_point_tail(spec, xs, t, icfg, qcfg)[0];
}

double heat_kernel_free(const SymbolSpec& spec, double x, double t, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw ArgumentError("heat_kernel_free: t must be positive");
    x = std::abs(x);
    const double sc = safe_inverse(spec, 1.0 / t);
    auto f = [&](double s) { return std::exp(-t * spec.psi_fast(s)); };
    QuadResult<double> r;
    if (x == 0.0) {
        r = quad::half_line(f, sc > 0.0 ? sc : 1.0, cfg);
    } else {
        std::vector<double> br;
        for (double m : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) br.push_back(m * sc);
        r = quad::fourier(f, x, quad::Trig::cos, 0.0, cfg, 0.0, br);
    }
    if (!r.converged && r.error > 1e-8 * std::abs(r.value) + 1e-14)
        throw NumericalError("heat_kernel_free: quadrature did not converge", r.error / kPi, r.truncation);
    double v = r.value / kPi;
    if (v < 0.0 && -v <= 10.0 * r.error / kPi + 1e-15) v = 0.0;
    return v;
}

double heat_kernel_cdf(const SymbolSpec& spec, double x, double t, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(t > 0.0)) throw ArgumentError("heat_kernel_cdf: t must be positive");
    if (x == 0.0) return 0.5;
    const double ax = std::abs(x);
    const double sc = safe_inverse(spec, 1.0 / t);
    auto f = [&](double s) { return std::exp(-t * spec.psi_fast(s)) / s; };
    std::vector<double> br;
    for (double m : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) br.push_back(m * sc);
    auto r = quad::fourier(f, ax, quad::Trig::sin, 0.0, cfg, 0.0, br);
    if (!r.converged && r.error > 1e-8)
        throw NumericalError("heat_kernel_cdf: quadrature did not converge", r.error / kPi, r.truncation);
    double half = std::clamp(r.value / kPi, 0.0, 0.5);
    return x > 0.0 ? 0.5 + half : 0.5 - half;
}

double heat_kernel_central(const SymbolSpec& spec, const RenewalProfile& profile, double x, double t) {
    if (!(t > 0.0)) throw ArgumentError("heat_kernel_central: t must be positive");
    const double a = spec.psi_inverse(1.0 / t);
    x = std::abs(x);
    if (x == 0.0) return a;
    const double v = profile.V(x);
    return std::min(a, t / (x * v * v));
}

}  // namespace levyhit
