#include "levyhit/renewal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <shared_mutex>

#include "levyhit/interp.hpp"

namespace levyhit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindow = 40.0;  // |w| cut-off; the weight 1/(2 cosh w) is ~e^{-40} there

double log_kappa_quadrature(const SymbolSpec& spec, double xi, const QuadratureConfig& cfg) {
    auto f = [&](double w) {
        double p = spec.psi_fast(xi * std::exp(w));
        if (!(p > 0.0) || !std::isfinite(p))
            throw NumericalError("ladder_exponent: psi vanishes or overflows at xi = " +
                                     std::to_string(xi * std::exp(w)),
                                 0.0, xi * std::exp(w));
        return std::log(p) / (2.0 * std::cosh(w));
    };
    static const double breaks[] = {-kWindow, -30.0, -20.0, -12.0, -6.0, -3.0, -1.0, 0.0,
                                    1.0,      3.0,   6.0,   12.0,  20.0, 30.0, kWindow};
    QuadratureConfig c = cfg;
    c.rel_tol = std::min(cfg.rel_tol, 1e-13);
    c.abs_tol = 1e-16;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < std::size(breaks); ++i) sum += quad::gk(f, breaks[i], breaks[i + 1], c).value;
    return sum / kPi;
}

/// Closed-form continuation for psi = c |xi|^a: kappa(s) = sqrt(c) s^{a/2}.
std::optional<std::pair<double, double>> single_component(const SymbolSpec& spec) {
    auto parts = spec.stable_components();
    if (parts.size() != 1) return std::nullopt;
    return parts.front();
}

template <class Fc, class Fr>
double invert(const SymbolSpec& spec, double x, const InversionConfig& icfg, Fc&& complex_transform,
              Fr&& real_transform) {
    if (resolve_method(spec, icfg) == InversionMethod::talbot)
        return laplace::talbot(complex_transform, x, icfg.talbot_nodes);
    return laplace::gaver_stehfest(real_transform, x, icfg.stehfest_terms);
}

}  // namespace

double ladder_exponent(const SymbolSpec& spec, double xi, const QuadratureConfig& cfg) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw ArgumentError("ladder_exponent: xi must be positive and finite");
    return std::exp(log_kappa_quadrature(spec, xi, cfg));
}

bool ladder_exponent_has_continuation(const SymbolSpec& spec) { return single_component(spec).has_value(); }

InversionMethod resolve_method(const SymbolSpec& spec, const InversionConfig& cfg) {
    if (cfg.method == InversionMethod::gaver_stehfest) return cfg.method;
    bool cont = ladder_exponent_has_continuation(spec);
    if (cfg.method == InversionMethod::talbot && !cont)
        throw HypothesisError("Talbot inversion of the renewal transform needs a closed-form continuation of kappa",
                              "analytic ladder exponent");
    return cont ? InversionMethod::talbot : InversionMethod::gaver_stehfest;
}

double stable_renewal_constant(double alpha) { return 1.0 / std::tgamma(1.0 + alpha / 2.0); }

double renewal_V(const SymbolSpec& spec, double x, const InversionConfig& icfg, const QuadratureConfig& qcfg) {
    icfg.validate();
    if (!(x > 0.0)) return 0.0;
    auto sc = single_component(spec);
    auto fc = [&](std::complex<double> s) {
        return 1.0 / (s * std::sqrt(sc->first) * std::pow(s, sc->second / 2.0));
    };
    auto fr = [&](double s) { return 1.0 / (s * ladder_exponent(spec, s, qcfg)); };
    double v = invert(spec, x, icfg, fc, fr);
    if (icfg.cross_check) {
        InversionConfig other = icfg;
        other.cross_check = false;
        // Talbot is checked against Gaver-Stehfest, Gaver-Stehfest against itself at
        // a different number of terms.
        other.method = InversionMethod::gaver_stehfest;
        if (resolve_method(spec, icfg) == InversionMethod::gaver_stehfest)
            other.stehfest_terms = icfg.stehfest_terms == 14 ? 12 : 14;
        double w = renewal_V(spec, x, other, qcfg);
        if (std::abs(w - v) > 10.0 * icfg.target_rel_tol * std::abs(v))
            throw NumericalError("renewal_V: inversion cross-check failed (" + std::to_string(v) + " vs " +
                                     std::to_string(w) + ")",
                                 std::abs(w - v) / std::abs(v));
    }
    return v;
}

double renewal_V_prime(const SymbolSpec& spec, double x, const InversionConfig& icfg,
                       const QuadratureConfig& qcfg) {
    icfg.validate();
    if (!(x > 0.0)) throw ArgumentError("renewal_V_prime: x must be positive");
    auto sc = single_component(spec);
    auto fc = [&](std::complex<double> s) { return 1.0 / (std::sqrt(sc->first) * std::pow(s, sc->second / 2.0)); };
    auto fr = [&](double s) { return 1.0 / ladder_exponent(spec, s, qcfg); };
    double d = invert(spec, x, icfg, fc, fr);
    if (icfg.cross_check) {
        InversionConfig plain = icfg;
        plain.cross_check = false;
        // Gaver-Stehfest values carry ~1e-9 relative noise, which a 1e-4 step
        // would amplify to the size of the tolerance.
        const double h = (resolve_method(spec, icfg) == InversionMethod::talbot ? 1e-4 : 1e-3) * x;
        double fd = (renewal_V(spec, x + h, plain, qcfg) - renewal_V(spec, x - h, plain, qcfg)) / (2.0 * h);
        double tol = 10.0 * icfg.target_rel_tol;
        if (std::abs(fd - d) > tol * std::abs(d))
            throw NumericalError("renewal_V_prime: inversion disagrees with finite differences of V (" +
                                     std::to_string(d) + " vs " + std::to_string(fd) + ")",
                                 std::abs(fd - d) / std::abs(d));
    }
    return d;
}

RenewalProfile RenewalProfile::build(const SymbolSpec& spec, double x_min, double x_max, int per_decade,
                                     const InversionConfig& icfg, const QuadratureConfig& qcfg) {
    if (!(x_min > 0.0) || !(x_max > x_min)) throw ArgumentError("RenewalProfile: need 0 < x_min < x_max");
    if (per_decade < 2) throw ArgumentError("RenewalProfile: per_decade must be >= 2");
    RenewalProfile p;
    p.method_ = resolve_method(spec, icfg);
    p.hash_ = spec.hash();
    p.log_x0_ = std::log(x_min);
    p.log_step_ = std::log(10.0) / per_decade;
    const int n = static_cast<int>(std::ceil((std::log(x_max) - p.log_x0_) / p.log_step_)) + 1;
    if (n < 6) throw ArgumentError("RenewalProfile: grid needs at least 6 points");
    InversionConfig plain = icfg;
    plain.cross_check = false;
    for (int i = 0; i < n; ++i) {
        double x = std::exp(p.log_x0_ + i * p.log_step_);
        double v = renewal_V(spec, x, plain, qcfg);
        double d = renewal_V_prime(spec, x, plain, qcfg);
        if (!(v > 0.0) || !(d > 0.0))
            throw NumericalError("RenewalProfile: non-positive V or V' at x = " + std::to_string(x), 0.0);
        p.x_.push_back(x);
        p.v_.push_back(v);
        p.dv_.push_back(d);
        p.logv_.push_back(std::log(v));
        p.logdv_.push_back(std::log(d));
    }
    return p;
}

double RenewalProfile::eval(const std::vector<double>& logy, double x) const {
    const double lx = std::log(x);
    const double u = (lx - log_x0_) / log_step_;
    const double n = static_cast<double>(logy.size() - 1);
    if (u < 0.0) {
        double slope = (logy[1] - logy[0]) / log_step_;
        return std::exp(logy[0] + slope * (lx - log_x0_));
    }
    if (u > n) {
        double slope = (logy.back() - logy[logy.size() - 2]) / log_step_;
        return std::exp(logy.back() + slope * (lx - (log_x0_ + n * log_step_)));
    }
    return std::exp(lagrange_uniform(logy, log_x0_, log_step_, lx));
}

double RenewalProfile::V(double x) const {
    if (!(x > 0.0)) return 0.0;
    return eval(logv_, x);
}

double RenewalProfile::V_prime(double x) const {
    if (!(x > 0.0)) throw ArgumentError("RenewalProfile::V_prime: x must be positive");
    return eval(logdv_, x);
}

bool RenewalProfile::valid() const {
    if (x_.size() < 2) return false;
    if (V(0.0) != 0.0) return false;
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(dv_[i] > 0.0)) return false;
        if (i > 0 && !(v_[i] > v_[i - 1])) return false;
    }
    return true;
}

const RenewalProfile& cached_profile(const SymbolSpec& spec) {
    static std::shared_mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<RenewalProfile>> cache;
    const auto key = spec.hash();
    {
        std::shared_lock lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto p = std::make_unique<RenewalProfile>(RenewalProfile::build(spec, 1e-6, 1e6, 16));
    std::unique_lock lk(mu);
    auto [it, inserted] = cache.emplace(key, std::move(p));
    return *it->second;
}

namespace {

template <class Vp>
double green_generic(Vp&& vprime, double x, double y, double rel_tol) {
    if (!(x > 0.0) || !(y > 0.0)) throw ArgumentError("green_halfline: x and y must be positive");
    const double a = std::min(x, y), d = std::abs(y - x);
    auto f = [&](double v) {
        if (v <= 0.0) return 0.0;
        double u = a * v * v;
        return 2.0 * a * v * vprime(u) * vprime(d + u);
    };
    QuadratureConfig c;
    c.rel_tol = rel_tol;
    c.abs_tol = 1e-300;
    auto r = quad::gk(f, 0.0, 1.0, c, 400);
    return r.value;
}

}  // namespace

double green_halfline(const SymbolSpec& spec, double x, double y, const InversionConfig& icfg,
                      const QuadratureConfig& qcfg) {
    InversionConfig plain = icfg;
    plain.cross_check = false;
    return green_generic([&](double u) { return renewal_V_prime(spec, u, plain, qcfg); }, x, y, 1e-8);
}

double green_halfline(const RenewalProfile& profile, double x, double y, double rel_tol) {
    return green_generic([&](double u) { return profile.V_prime(u); }, x, y, rel_tol);
}

double green_halfline_mass(const RenewalProfile& profile, double x, double z, double rel_tol) {
    if (!(x > 0.0) || !(z > 0.0)) throw ArgumentError("green_halfline_mass: x and z must be positive");
    // M(x, z) = int_0^z V'(y) [V(x) - V((x + y - z) v 0)] dy; y = c v^2 on each piece
    // tames the integrable blow-up of V' at 0, the split sits at the kink y = z - x.
    const double vx = profile.V(x);
    auto f = [&](double y) { return profile.V_prime(y) * (vx - profile.V(std::max(x + y - z, 0.0))); };
    QuadratureConfig c;
    c.rel_tol = rel_tol;
    c.abs_tol = 1e-300;
    auto piece = [&](double lo, double hi) {
        if (!(hi > lo)) return 0.0;
        if (lo == 0.0) {
            auto g = [&](double v) { return v <= 0.0 ? 0.0 : 2.0 * hi * v * f(hi * v * v); };
            return quad::gk(g, 0.0, 1.0, c, 200).value;
        }
        return quad::gk(f, lo, hi, c, 200).value;
    };
    const double k = std::max(z - x, 0.0);
    return piece(0.0, k > 0.0 ? k : z) + piece(k > 0.0 ? k : z, z);
}

double green_halfline_mass_direct(const RenewalProfile& profile, double x, double z, double rel_tol) {
    if (!(x > 0.0) || !(z > 0.0)) throw ArgumentError("green_halfline_mass: x and z must be positive");
    auto g = [&](double y) { return y <= 0.0 ? 0.0 : green_halfline(profile, x, y, 0.1 * rel_tol); };
    QuadratureConfig c;
    c.rel_tol = rel_tol;
    c.abs_tol = 1e-300;
    if (z <= x) return quad::gk(g, 0.0, z, c, 200).value;
    return quad::gk(g, 0.0, x, c, 200).value + quad::gk(g, x, z, c, 200).value;
}

PropertyHReport check_property_H(const RenewalProfile& profile, std::vector<double> deltas, int pairs,
                                 std::uint64_t seed) {
    if (deltas.empty() || pairs < 1) throw ArgumentError("check_property_H: need deltas and pairs >= 1");
    PropertyHReport rep;
    rep.deltas = deltas;
    rep.pairs = pairs;
    auto sup_ratio = [&](int n) {
        double h = 1.0;  // u = w is always admissible
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (double d : deltas) {
            for (int i = 0; i < n; ++i) {
                double w = d * std::pow(100.0, unit(rng));
                double u = w + 2.0 * d * unit(rng);
                h = std::max(h, profile.V_prime(u) / profile.V_prime(w));
            }
        }
        return h;
    };
    rep.h = sup_ratio(pairs);
    rep.h_refined = sup_ratio(2 * pairs);
    rep.passing = std::isfinite(rep.h_refined) && std::abs(rep.h_refined - rep.h) <= 0.05 * rep.h;
    return rep;
}

SandwichConstant renewal_sandwich_constant(const SymbolSpec& spec, const RenewalProfile& profile, double r_min,
                                           double r_max, int points) {
    if (!(r_min > 0.0) || !(r_max > r_min) || points < 2)
        throw ArgumentError("renewal_sandwich_constant: bad r grid");
    auto worst = [&](int n) {
        double c = 1.0;
        for (int i = 0; i < n; ++i) {
            double r = r_min * std::pow(r_max / r_min, static_cast<double>(i) / (n - 1));
            double q = profile.V(r) * std::sqrt(spec.psi_star(1.0 / r));
            c = std::max({c, q, 1.0 / q});
        }
        return c;
    };
    SandwichConstant s;
    s.r_min = r_min;
    s.r_max = r_max;
    s.c = worst(points);
    s.c_refined = worst(2 * points - 1);
    s.passing = std::isfinite(s.c_refined) && std::abs(s.c_refined - s.c) <= 0.05 * s.c;
    return s;
}

}  // namespace levyhit
