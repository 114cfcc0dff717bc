#pragma once

// Adaptive quadrature building blocks: finite panels (Gauss-Kronrod / tanh-sinh),
// log-segmented semi-infinite tails, and Fourier-type integrals integrated between
// consecutive zeros of the trigonometric factor with Wynn-epsilon acceleration of
// the panel partial sums.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levyhit/error.hpp"

namespace levyhit {

enum class OscillatoryStrategy { between_zeros, fixed_panel };

struct QuadratureConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-15;
    int max_panels = 40000;
    OscillatoryStrategy oscillatory_strategy = OscillatoryStrategy::between_zeros;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0))
            throw ArgumentError("QuadratureConfig: tolerances must be positive");
        if (max_panels < 16) throw ArgumentError("QuadratureConfig: max_panels must be >= 16");
    }
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;       // estimated absolute error
    double truncation = 0.0;  // last abscissa reached by a tail scheme
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        truncation = std::max(truncation, o.truncation);
        converged = converged && o.converged;
        return *this;
    }
};

namespace quad {

template <class T>
inline double mag(const T& v) {
    using std::abs;
    return static_cast<double>(abs(v));
}

template <class T>
inline bool finite(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

template <class F>
using result_t = std::decay_t<std::invoke_result_t<F&, double>>;

namespace detail {

struct Gk15 {
    std::array<double, 8> xk{};
    std::array<double, 8> wk{};
    std::array<double, 4> wg{};
};

inline const Gk15& gk15() {
    static const Gk15 r = [] {
        Gk15 g;
        const auto& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
        const auto& w = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
        const auto& gw = boost::math::quadrature::gauss<double, 7>::weights();
        for (int i = 0; i < 8; ++i) {
            g.xk[i] = x[i];
            g.wk[i] = w[i];
        }
        for (int i = 0; i < 4; ++i) g.wg[i] = gw[i];
        return g;
    }();
    return r;
}

template <class T>
struct Piece {
    double a, b;
    T value;
    double error;
    double l1;
};

/// One 15-point Kronrod / 7-point Gauss panel with the QUADPACK error heuristic.
template <class F, class T>
Piece<T> gk15_rule(F& f, double a, double b) {
    const Gk15& g = gk15();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<T, 15> fv;
    fv[0] = f(c);
    for (int j = 1; j < 8; ++j) {
        fv[2 * j - 1] = f(c - h * g.xk[j]);
        fv[2 * j] = f(c + h * g.xk[j]);
    }
    for (auto& v : fv)
        if (!finite(v)) v = T{};
    T k = g.wk[0] * fv[0];
    T gs = g.wg[0] * fv[0];
    double resabs = g.wk[0] * mag(fv[0]);
    for (int j = 1; j < 8; ++j) {
        T s = fv[2 * j - 1] + fv[2 * j];
        k += g.wk[j] * s;
        resabs += g.wk[j] * (mag(fv[2 * j - 1]) + mag(fv[2 * j]));
        if (j % 2 == 0) gs += g.wg[j / 2] * s;
    }
    T mean = k * 0.5;
    double resasc = g.wk[0] * mag(fv[0] - mean);
    for (int j = 1; j < 8; ++j) resasc += g.wk[j] * (mag(fv[2 * j - 1] - mean) + mag(fv[2 * j] - mean));
    double err = mag(k - gs) * h;
    resasc *= h;
    resabs *= h;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    return Piece<T>{a, b, k * h, err, resabs};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod on [a, b] (bisection of the panel with
/// the largest error estimate). Works for real and complex integrands.
template <class F>
QuadResult<result_t<F>> gk(F&& f, double a, double b, const QuadratureConfig& cfg, int max_pieces = 2000) {
    using T = result_t<F>;
    QuadResult<T> r;
    if (!(b > a)) return r;
    using P = detail::Piece<T>;
    auto cmp = [](const P& x, const P& y) { return x.error < y.error; };
    std::vector<P> heap;
    heap.push_back(detail::gk15_rule<std::remove_reference_t<F>, T>(f, a, b));
    T total = heap[0].value;
    double err = heap[0].error;
    auto tol = [&] { return std::max(cfg.rel_tol * mag(total), cfg.abs_tol); };
    while (err > tol() && static_cast<int>(heap.size()) < max_pieces) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        P worst = heap.back();
        heap.pop_back();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        P left = detail::gk15_rule<std::remove_reference_t<F>, T>(f, worst.a, mid);
        P right = detail::gk15_rule<std::remove_reference_t<F>, T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
    // Re-sum to shed accumulated update roundoff.
    T sum{};
    double e = 0.0;
    for (const auto& p : heap) {
        sum += p.value;
        e += p.error;
    }
    r.value = sum;
    r.error = e;
    r.converged = e <= std::max(cfg.rel_tol * mag(sum), cfg.abs_tol) * 1.0001;
    return r;
}

/// tanh-sinh on [a, b]; for real integrands with algebraic endpoint singularities.
template <class F>
QuadResult<double> tanh_sinh(F&& f, double a, double b, const QuadratureConfig& cfg) {
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
    QuadResult<double> r;
    if (b <= a) return r;
    double err = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    auto guarded = [&](double s) -> double {
        double v = f(s);
        return std::isfinite(v) ? v : 0.0;
    };
    r.value = integrator.integrate(guarded, a, b, std::max(cfg.rel_tol, 1e-15), &err, &l1, &levels);
    // Boost reports the error of the integral mapped onto [-1, 1].
    err *= 0.5 * (b - a);
    r.error = err;
    r.converged = err <= std::max(100.0 * cfg.rel_tol * l1, cfg.abs_tol);
    return r;
}

/// Panel integration with optional interior breakpoints. A panel starting at 0 uses
/// tanh-sinh for real integrands so that integrable endpoint singularities are tamed.
template <class F>
QuadResult<result_t<F>> panel(F&& f, double a, double b, const QuadratureConfig& cfg,
                              std::span<const double> breaks = {}) {
    using T = result_t<F>;
    QuadResult<T> total;
    double lo = a;
    auto piece = [&](double x0, double x1) {
        if constexpr (std::is_floating_point_v<T>) {
            if (x0 == 0.0) return tanh_sinh(f, x0, x1, cfg);
        }
        return gk(f, x0, x1, cfg);
    };
    for (double br : breaks) {
        if (br > lo && br < b) {
            total += piece(lo, br);
            lo = br;
        }
    }
    total += piece(lo, b);
    return total;
}

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the entry of
/// the highest even column built from the most recent terms.
template <class T>
T wynn_epsilon(std::span<const T> sums) {
    const std::size_t n = sums.size();
    if (n < 3) return sums.back();
    std::vector<T> prev(n + 1, T{});
    std::vector<T> cur(sums.begin(), sums.end());
    T best = cur.back();
    for (std::size_t k = 1; cur.size() > 1; ++k) {
        std::vector<T> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            T diff = cur[i + 1] - cur[i];
            if (mag(diff) <= std::numeric_limits<double>::min() * 16) {
                // Column has stagnated: the sequence is numerically converged.
                return (k % 2 == 1) ? cur[i + 1] : best;
            }
            next[i] = prev[i + 1] + T{1} / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) best = cur.back();
    }
    return best;
}

/// Integral over [a, inf) computed in the log variable s = a e^v on segments whose
/// length doubles. When the tail decays too slowly to converge before the dynamic
/// range of doubles runs out, the last segment contributions are extrapolated
/// geometrically.
template <class F>
QuadResult<result_t<F>> tail(F&& f, double a, const QuadratureConfig& cfg) {
    using T = result_t<F>;
    if (!(a > 0)) throw ArgumentError("quad::tail: lower limit must be positive");
    auto g = [&](double v) -> T {
        double s = a * std::exp(v);
        return f(s) * s;
    };
    QuadResult<T> total;
    double v0 = 0.0;
    double len = 0.5;
    int small = 0;
    std::vector<T> pieces;
    const double vmax = std::log(1e300) - std::log(a);  // 1e300 / a overflows for tiny a
    while (v0 + len <= vmax) {
        double v1 = v0 + len;
        auto piece = gk(g, v0, v1, cfg);
        total += piece;
        total.truncation = a * std::exp(v1);
        pieces.push_back(piece.value);
        double tol = std::max(cfg.rel_tol * mag(total.value), cfg.abs_tol);
        small = (mag(piece.value) <= tol) ? small + 1 : 0;
        if (small >= 2) return total;
        v0 = v1;
        len *= 2.0;
    }
    // Slowly convergent tail (e.g. 1/log decay): the segments double in the log
    // variable, so their contributions shrink with ratios q_n that settle to a limit.
    // The ratios are extrapolated (Aitken) and the remainder summed from the
    // modelled ratios; the change against the same model one segment earlier is
    // the error estimate.
    auto remainder = [&](std::size_t n) -> std::optional<T> {
        if (n < 4) return std::nullopt;
        std::array<double, 3> q{};
        for (int j = 0; j < 3; ++j) {
            double m1 = mag(pieces[n - 3 + j - 1]);
            if (!(m1 > 0)) return std::nullopt;
            q[j] = mag(pieces[n - 3 + j]) / m1;
        }
        double d1 = q[1] - q[0], d2 = q[2] - q[1];
        double rho = (d1 != 0.0) ? d2 / d1 : 0.0;
        double qinf = q[2];
        if (rho > 0.0 && rho < 0.95) qinf = q[2] + d2 * rho / (1.0 - rho);
        else rho = 0.0;
        if (!(qinf < 0.98) || !(q[2] < 1.0)) return std::nullopt;
        double sum = 0.0, prod = 1.0, rj = 1.0;
        for (int k = 1; k < 4000; ++k) {
            rj *= rho;
            prod *= qinf + (q[2] - qinf) * rj;
            sum += prod;
            if (prod < 1e-17 * sum) break;
        }
        return pieces[n - 1] * sum;
    };
    const std::size_t n = pieces.size();
    T geo_value{};
    double geo_err = std::numeric_limits<double>::infinity();
    auto r_last = remainder(n);
    auto r_prev = remainder(n - 1);
    if (r_last && r_prev) {
        geo_value = *r_last;
        geo_err = mag(*r_last - (*r_prev - pieces[n - 1]));
    } else if (r_last) {
        geo_value = *r_last;
        geo_err = mag(*r_last);
    }
    // Integrand decaying like 1/poly(v) in the log variable (1/(s log^2 s) and
    // similar): fit 1/g by a quadratic through three abscissae and integrate the
    // model beyond v0 (v = v0/t maps the remainder onto (0, 1]). Two node sets give
    // the error estimate.
    auto poly_tail = [&](double va, double vb) -> std::optional<T> {
        const double vs[3] = {va, vb, v0};
        T h[3];
        for (int j = 0; j < 3; ++j) {
            T gj = g(vs[j]);
            if (!(mag(gj) > 0.0) || !finite(gj)) return std::nullopt;
            h[j] = T(1) / gj;
        }
        // Newton form of the interpolating quadratic.
        T d01 = (h[1] - h[0]) / (vs[1] - vs[0]);
        T d12 = (h[2] - h[1]) / (vs[2] - vs[1]);
        T d012 = (d12 - d01) / (vs[2] - vs[0]);
        auto q = [&](double v) { return h[0] + d01 * (v - vs[0]) + d012 * (v - vs[0]) * (v - vs[1]); };
        auto integrand = [&](double t) -> T {
            if (t <= 0.0) return T(0);
            double v = v0 / t;
            return v0 / (t * t) / q(v);
        };
        QuadratureConfig c2 = cfg;
        auto r = gk(integrand, 0.0, 1.0, c2, 200);
        if (!finite(r.value)) return std::nullopt;
        return r.value;
    };
    T poly_value{};
    double poly_err = std::numeric_limits<double>::infinity();
    if (v0 > 8.0) {
        auto p1 = poly_tail(0.25 * v0, 0.5 * v0);
        auto p2 = poly_tail(0.5 * v0, 0.75 * v0);
        if (p1 && p2) {
            poly_value = *p2;
            poly_err = mag(*p2 - *p1);
        }
    }
    if (poly_err < geo_err) {
        total.value += poly_value;
        total.error += poly_err;
    } else if (std::isfinite(geo_err)) {
        total.value += geo_value;
        total.error += geo_err;
    } else if (!pieces.empty()) {
        total.error += mag(pieces.back());
    }
    total.converged =
        total.error <= std::max(1e3 * cfg.rel_tol * mag(total.value), cfg.abs_tol);
    return total;
}

/// Integral over (0, inf) in the log variable s = c e^v, marching outwards from the
/// scale c in both directions.
template <class F>
QuadResult<result_t<F>> half_line(F&& f, double center, const QuadratureConfig& cfg) {
    using T = result_t<F>;
    QuadResult<T> right = tail(f, center, cfg);
    auto g = [&](double v) -> T {
        double s = center * std::exp(v);
        return f(s) * s;
    };
    QuadResult<T> left;
    double v1 = 0.0;
    double len = 0.5;
    int small = 0;
    const double vmin = std::log(1e-300 / center);
    while (v1 > vmin) {
        double v0 = std::max(v1 - len, vmin);
        auto piece = gk(g, v0, v1, cfg);
        left += piece;
        double tol = std::max(cfg.rel_tol * (mag(left.value) + mag(right.value)), cfg.abs_tol);
        small = (mag(piece.value) <= tol) ? small + 1 : 0;
        if (small >= 2) break;
        v1 = v0;
        len *= 2.0;
    }
    right += left;
    return right;
}

enum class Trig { cos, sin };

/// Zeros of cos(w s) are (k + 1/2) pi / w, zeros of sin(w s) are k pi / w.
inline double next_zero(Trig kind, double omega, double s) {
    const double pi = std::numbers::pi;
    double shift = (kind == Trig::cos) ? 0.5 : 0.0;
    double k = std::floor(s * omega / pi - shift) + 1.0;
    double z = (k + shift) * pi / omega;
    if (z <= s) z = (k + 1.0 + shift) * pi / omega;
    return z;
}

/// Integral of trig(omega s) f(s) over [a, inf). Panels between consecutive zeros of
/// the trigonometric factor are integrated adaptively; everything before `body_end`
/// is summed exactly, later panel partial sums are accelerated by Wynn epsilon. The
/// scheme stops when the current panel (the alternating-series remainder bound) or
/// the spread of the last accelerated estimates falls below tolerance.
template <class F>
QuadResult<result_t<F>> fourier(F&& f, double omega, Trig kind, double a,
                                const QuadratureConfig& cfg, double body_end = 0.0,
                                std::span<const double> breaks = {}) {
    using T = result_t<F>;
    if (!(omega > 0)) throw ArgumentError("quad::fourier: frequency must be positive");
    auto h = [&](double s) -> T {
        double c = (kind == Trig::cos) ? std::cos(omega * s) : std::sin(omega * s);
        return f(s) * c;
    };
    QuadResult<T> total;
    double lo = a;
    int panels = 0;
    const double body = std::max(body_end, a);
    while (lo < body && panels < cfg.max_panels) {
        double hi = next_zero(kind, omega, lo);
        total += panel(h, lo, hi, cfg, breaks);
        lo = hi;
        ++panels;
    }

    const double pi = std::numbers::pi;
    const bool accelerate = cfg.oscillatory_strategy == OscillatoryStrategy::between_zeros;
    const double width = accelerate ? pi / omega : 8.0 * pi / omega;
    std::vector<T> sums;
    std::vector<T> estimates;
    T running = total.value;
    double err_panels = total.error;
    int tail_panels = 0;
    while (panels < cfg.max_panels) {
        double hi = accelerate ? next_zero(kind, omega, lo) : lo + width;
        auto p = panel(h, lo, hi, cfg, breaks);
        err_panels += p.error;
        running += p.value;
        lo = hi;
        ++panels;
        ++tail_panels;
        sums.push_back(running);

        double tol = std::max(cfg.rel_tol * mag(running), cfg.abs_tol);
        if (mag(p.value) <= 0.5 * tol && tail_panels >= 2) {
            total.value = running;
            total.error = err_panels + mag(p.value);
            total.truncation = lo;
            total.converged = true;
            return total;
        }
        if (!accelerate || tail_panels < 6) continue;
        std::size_t window = std::min<std::size_t>(sums.size(), 21);
        if (window % 2 == 0) --window;
        T est = wynn_epsilon<T>(std::span<const T>(sums).last(window));
        estimates.push_back(est);
        if (estimates.size() >= 3) {
            std::size_t m = estimates.size();
            double d1 = mag(estimates[m - 1] - estimates[m - 2]);
            double d2 = mag(estimates[m - 2] - estimates[m - 3]);
            double etol = std::max(cfg.rel_tol * mag(est), cfg.abs_tol);
            if (d1 <= etol && d2 <= etol) {
                total.value = est;
                total.error = err_panels + d1 + d2;
                total.truncation = lo;
                total.converged = true;
                return total;
            }
        }
    }
    total.value = estimates.empty() ? running : estimates.back();
    std::size_t m = estimates.size();
    total.error = err_panels + (m >= 2 ? mag(estimates[m - 1] - estimates[m - 2]) : mag(running));
    total.truncation = lo;
    total.converged = false;
    return total;
}

/// Integral of (1 - cos(omega s)) f(s) over (0, inf) for f with an integrable tail.
/// The body up to a zero of cos beyond `body_end` uses the cancellation-free form
/// 2 sin^2(omega s / 2) f(s); the remainder splits into a plain tail integral of f and
/// an accelerated cosine tail.
template <class F>
QuadResult<result_t<F>> one_minus_cos(F&& f, double omega, const QuadratureConfig& cfg,
                                      double body_end = 0.0,
                                      std::span<const double> breaks = {}) {
    using T = result_t<F>;
    QuadResult<T> total;
    if (omega == 0.0) return total;
    const double pi = std::numbers::pi;
    double cut = next_zero(Trig::cos, omega, std::max(body_end, pi / omega));
    auto smooth = [&](double s) -> T {
        double sn = std::sin(0.5 * omega * s);
        return f(s) * (2.0 * sn * sn);
    };
    double lo = 0.0;
    int panels = 0;
    while (lo < cut && panels < cfg.max_panels) {
        double hi = std::min(next_zero(Trig::cos, omega, lo), cut);
        total += panel(smooth, lo, hi, cfg, breaks);
        lo = hi;
        ++panels;
    }
    auto plain = tail(f, cut, cfg);
    auto osc = fourier(f, omega, Trig::cos, cut, cfg);
    total.value += plain.value - osc.value;
    total.error += plain.error + osc.error;
    total.truncation = std::max(plain.truncation, osc.truncation);
    total.converged = total.converged && plain.converged && osc.converged;
    return total;
}

}  // namespace quad
}  // namespace levyhit
