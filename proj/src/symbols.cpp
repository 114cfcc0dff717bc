#include "levyhit/symbols.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "levyhit/interp.hpp"

namespace levyhit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lévy density constant making 2 \int_0^inf (1 - cos x) c x^{-1-a} dx = 1.
double stable_density_constant(double alpha) {
    return std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0) / kPi;
}

/// k^a - (k-1)^a without cancellation.
double atomic_weight(double k, double alpha) {
    if (k <= 1.0) return std::pow(k, alpha);
    return -std::pow(k, alpha) * std::expm1(alpha * std::log1p(-1.0 / k));
}

QuadratureConfig inner_cfg() {
    QuadratureConfig c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-300;
    return c;
}

std::vector<double> decade_breaks() {
    std::vector<double> b;
    for (int e = -14; e <= 14; ++e) b.push_back(std::pow(10.0, e));
    return b;
}

double fmt_check(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericalError(std::string("non-finite ") + what, kInf);
    return v;
}

/// Least-squares fit of y_i ~ sum_j c_j t_i^j.
std::vector<double> polyfit(const std::vector<double>& t, const std::vector<double>& y, int degree) {
    const int m = degree + 1;
    std::vector<double> a(m * m, 0.0), b(m, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<double> pw(m, 1.0);
        for (int j = 1; j < m; ++j) pw[j] = pw[j - 1] * t[i];
        for (int r = 0; r < m; ++r) {
            b[r] += pw[r] * y[i];
            for (int c = 0; c < m; ++c) a[r * m + c] += pw[r] * pw[c];
        }
    }
    // Gaussian elimination with partial pivoting; m <= 3.
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
        if (piv != col) {
            for (int c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < m; ++r) {
            double f = a[r * m + col] / a[col * m + col];
            for (int c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < m; ++c) s -= a[r * m + c] * x[c];
        x[r] = s / a[r * m + r];
    }
    return x;
}

/// Behaviour of the jump part outside its table: J(xi) = xi^p * poly(log xi - Lref).
struct EndModel {
    double p = 0.0;
    double lref = 0.0;
    std::vector<double> coef;

    double operator()(double L) const {
        double t = L - lref;
        double s = 0.0;
        for (std::size_t j = coef.size(); j-- > 0;) s = s * t + coef[j];
        return std::exp(p * L) * std::max(s, 0.0);
    }
};

/// Fit over the table nodes [i0, i1); p fitted from the log slope when not given.
EndModel fit_end(const std::vector<double>& L, const std::vector<double>& logJ, std::size_t i0,
                 std::size_t i1, std::optional<double> p, int degree, double lref) {
    EndModel m;
    m.lref = lref;
    std::vector<double> t, y;
    for (std::size_t i = i0; i < i1; ++i) t.push_back(L[i] - lref);
    if (!p) {
        for (std::size_t i = i0; i < i1; ++i) y.push_back(logJ[i]);
        auto c = polyfit(t, y, 1);
        m.p = c[1];
        m.coef = {std::exp(c[0] - m.p * lref)};
        return m;
    }
    m.p = *p;
    for (std::size_t i = i0; i < i1; ++i) y.push_back(std::exp(logJ[i] - m.p * L[i]));
    m.coef = polyfit(t, y, degree);
    return m;
}

}  // namespace

std::string to_string(Tri t) {
    switch (t) {
        case Tri::no: return "no";
        case Tri::yes: return "yes";
        default: return "unknown";
    }
}

Tri tri_from_string(std::string_view s) {
    if (s == "yes" || s == "true") return Tri::yes;
    if (s == "no" || s == "false") return Tri::no;
    if (s == "unknown") return Tri::unknown;
    throw ArgumentError("tri-state flag must be yes/no/unknown, got '" + std::string(s) + "'");
}

std::string to_string(Family f) {
    switch (f) {
        case Family::stable: return "stable";
        case Family::brownian: return "brownian";
        case Family::cauchy_plus_bm: return "cauchy_plus_bm";
        case Family::log_perturbed: return "log_perturbed";
        case Family::atomic_stablelike: return "atomic_stablelike";
        case Family::two_stable: return "two_stable";
        case Family::triplet: return "triplet";
    }
    return "?";
}

std::string to_string(Regularity r) {
    switch (r) {
        case Regularity::regular: return "regular";
        case Regularity::not_regular: return "not_regular";
        default: return "indeterminate";
    }
}

// ---------------------------------------------------------------------------
// Impl

struct SymbolSpec::Impl {
    Family family = Family::triplet;
    std::vector<double> params;
    std::optional<LevyTriplet> triplet;
    Tri unimodal = Tri::unknown;
    Tri nondecreasing = Tri::unknown;
    std::shared_ptr<const Impl> base;  // set for the maximal-function transform

    double sigma2 = 0.0;
    std::vector<std::pair<double, double>> stable_parts;  // psi = sum c |xi|^a when closed
    bool closed = false;

    // Jump part descriptions (positive half line).
    std::function<double(double)> density;        // nu(x), may be empty
    std::vector<double> density_breaks;
    double support_end = kInf;
    std::vector<std::pair<double, double>> atoms;  // finite list
    bool atomic_series = false;
    double atomic_alpha = 0.0;
    std::vector<double> atomic_w;                  // k^a - (k-1)^a, k = 1..size
    double trunc_alpha = 0.0, trunc_cut = 0.0;     // truncated stable shortcut

    std::optional<double> idx0, idxinf;
    bool second_moment = false;

    // psi_fast table of the jump part (log-log).
    struct Table {
        double L0 = 0.0, h = 0.0;
        std::vector<double> L, logJ;
        EndModel lo, hi;
        int head_terms = 0;  // atomic: exact head k <= head_terms kept out of the table
    };
    mutable std::once_flag table_once;
    mutable Table table;

    // psi* table for non-monotone exponents.
    struct Star {
        std::vector<double> xi, val, runmax;
    };
    mutable std::once_flag star_once;
    mutable Star star;

    double atomic_w_at(long k) const {
        if (k >= 1 && static_cast<std::size_t>(k) <= atomic_w.size()) return atomic_w[k - 1];
        return atomic_weight(static_cast<double>(k), atomic_alpha);
    }

    double atomic_sum(double xi, long k_start) const {
        // Direct sum up to k1 where the phase xi/k^2 per step is small, then
        // Euler-Maclaurin for the smooth remainder.
        const double a = atomic_alpha;
        long k1 = std::max<long>(2000, static_cast<long>(std::ceil(16.0 * std::sqrt(xi))));
        k1 = std::max(k1, k_start);
        double s = 0.0, comp = 0.0;
        for (long k = k_start; k <= k1; ++k) {
            double sn = std::sin(0.5 * xi / static_cast<double>(k));
            double term = 2.0 * sn * sn * atomic_w_at(k);
            double y = term - comp;  // Kahan
            double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        auto f = [&](double k) {
            double sn = std::sin(0.5 * xi / k);
            return 2.0 * sn * sn * atomic_weight(k, a);
        };
        const double kk = static_cast<double>(k1);
        auto integral = quad::tail(f, kk, inner_cfg());
        double d1 = (f(kk + 0.5) - f(kk - 0.5));
        s += integral.value - 0.5 * f(kk) - d1 / 12.0;
        return 2.0 * s;
    }

    double density_part(double xi) const {
        if (trunc_cut > 0.0 && xi * trunc_cut > 50.0) {
            // stable minus the cut-off tail; no cancellation at this range
            const double c = stable_density_constant(trunc_alpha);
            auto g = [&](double x) { return c * std::pow(x, -1.0 - trunc_alpha); };
            auto osc = quad::fourier(g, xi, quad::Trig::cos, trunc_cut, inner_cfg());
            double plain = c * std::pow(trunc_cut, -trunc_alpha) / trunc_alpha;
            return std::pow(xi, trunc_alpha) - 2.0 * (plain - osc.value);
        }
        auto r = quad::one_minus_cos(density, xi, inner_cfg(), 0.0, density_breaks);
        if (!r.converged && r.error > 1e-7 * std::abs(r.value))
            throw NumericalError("psi quadrature did not converge", r.error / std::abs(r.value),
                                 r.truncation);
        return 2.0 * r.value;
    }

    double atoms_part(double xi) const {
        double s = 0.0;
        for (auto [x, m] : atoms) {
            double sn = std::sin(0.5 * xi * x);
            s += m * 2.0 * sn * sn;
        }
        return 2.0 * s;
    }

    /// Exact jump part (without gaussian and closed-form terms).
    double jump_exact(double xi) const {
        double j = 0.0;
        if (atomic_series) j += atomic_sum(xi, 1);
        if (density) j += density_part(xi);
        if (!atoms.empty()) j += atoms_part(xi);
        return j;
    }

    double closed_psi(double xi) const {
        double s = 0.0;
        for (auto [c, a] : stable_parts) s += c * (a == 2.0 ? xi * xi : a == 1.0 ? xi : std::pow(xi, a));
        return s;
    }

    double psi_exact(double xi) const {
        xi = std::abs(xi);
        if (base) return base_star(xi);
        if (xi == 0.0) return 0.0;
        if (closed) return closed_psi(xi);
        return fmt_check(jump_exact(xi) + sigma2 * xi * xi, "psi");
    }

    bool tabulated() const { return !closed && (atomic_series || static_cast<bool>(density)); }

    void build_table() const {
        Table& t = table;
        const bool atomic = atomic_series;
        const double lo_e = atomic ? -12.0 : -16.0;
        const double hi_e = atomic ? 8.0 : 16.0;
        const int per_decade = atomic ? 48 : 32;
        const int n = static_cast<int>((hi_e - lo_e) * per_decade) + 1;
        t.L0 = lo_e * std::log(10.0);
        t.h = std::log(10.0) / per_decade;
        t.head_terms = atomic ? 64 : 0;
        t.L.resize(n);
        t.logJ.resize(n);
        for (int i = 0; i < n; ++i) {
            double L = t.L0 + i * t.h;
            double xi = std::exp(L);
            double j = 0.0;
            if (atomic) j += atomic_sum(xi, t.head_terms + 1);
            if (density) j += density_part(xi);
            t.L[i] = L;
            t.logJ[i] = std::log(fmt_check(j, "psi table"));
        }
        const std::size_t nd = per_decade;
        // End models: declared growth rates where the family knows them.
        std::optional<double> p_lo, p_hi;
        int d_lo = 0, d_hi = 0;
        if (atomic) {
            p_lo = 2.0;
            p_hi = atomic_alpha;
        } else if (family == Family::log_perturbed ||
                   (triplet && std::holds_alternative<DensityTag>(triplet->levy_measure) &&
                    std::get<DensityTag>(triplet->levy_measure).name == "log_perturbed")) {
            p_lo = 1.0;
            d_lo = 1;
            p_hi = 1.0;
            d_hi = 2;
        } else if (trunc_cut > 0.0) {
            p_lo = 2.0;
            p_hi = trunc_alpha;
        }
        t.lo = fit_end(t.L, t.logJ, 0, nd, p_lo, d_lo, t.L.front());
        t.hi = fit_end(t.L, t.logJ, n - nd, n, p_hi, d_hi, t.L.back());
    }

    double jump_fast(double xi) const {
        std::call_once(table_once, [this] { build_table(); });
        const Table& t = table;
        double L = std::log(xi);
        double head = 0.0;
        if (t.head_terms > 0) {
            for (int k = 1; k <= t.head_terms; ++k) {
                double sn = std::sin(0.5 * xi / k);
                head += 2.0 * sn * sn * atomic_w[k - 1];
            }
            head *= 2.0;
        }
        double rest;
        if (L <= t.L.front()) {
            rest = t.lo(L);
        } else if (L >= t.L.back()) {
            rest = t.hi(L);
        } else {
            rest = std::exp(lagrange_uniform(t.logJ, t.L0, t.h, L));
        }
        return head + rest;
    }

    double psi_fast(double xi) const {
        xi = std::abs(xi);
        if (base) return base_star(xi);
        if (xi == 0.0) return 0.0;
        if (closed) return closed_psi(xi);
        double j = 0.0;
        if (tabulated()) j += jump_fast(xi);
        if (!atoms.empty()) j += atoms_part(xi);
        return j + sigma2 * xi * xi;
    }

    // -- maximal function ------------------------------------------------------

    void build_star() const {
        Star& s = star;
        std::vector<double> g;
        for (double e = -12.0; e < 0.0; e += 1.0 / 64) g.push_back(std::pow(10.0, e));
        // Oscillation scale: shortest period among atoms / atomic series.
        double amax = 1.0;
        for (auto [x, m] : atoms) amax = std::max(amax, x);
        double step = kPi / (8.0 * amax);
        double lin_end = std::min(2e3, 20000.0 * step);
        for (double x = 1.0; x < lin_end; x += step) g.push_back(x);
        for (double e = std::log10(lin_end); e <= 8.0; e += 1.0 / 64) g.push_back(std::pow(10.0, e));
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = psi_fast(g[i]);
        // Refine interior peaks by golden section and insert them as nodes.
        std::vector<double> xs, vs;
        xs.reserve(g.size() * 2);
        for (std::size_t i = 0; i < g.size(); ++i) {
            xs.push_back(g[i]);
            vs.push_back(v[i]);
            if (i == 0 || i + 1 >= g.size()) continue;
            if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
            double a = g[i - 1], b = g[i + 1];
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - gr * (b - a), d = a + gr * (b - a);
            double fc = psi_fast(c), fd = psi_fast(d);
            for (int it = 0; it < 80 && (b - a) > 1e-13 * b; ++it) {
                if (fc > fd) {
                    b = d; d = c; fd = fc; c = b - gr * (b - a); fc = psi_fast(c);
                } else {
                    a = c; c = d; fc = fd; d = a + gr * (b - a); fd = psi_fast(d);
                }
            }
            double z = 0.5 * (a + b);
            double fz = psi_fast(z);
            if (fz > v[i]) {
                // insert in order
                if (z < g[i]) {
                    xs.back() = z;
                    vs.back() = fz;
                    xs.push_back(g[i]);
                    vs.push_back(v[i]);
                } else {
                    xs.push_back(z);
                    vs.push_back(fz);
                }
            }
        }
        s.xi = std::move(xs);
        s.val = std::move(vs);
        s.runmax.resize(s.val.size());
        double m = 0.0;
        for (std::size_t i = 0; i < s.val.size(); ++i) {
            m = std::max(m, s.val[i]);
            s.runmax[i] = m;
        }
    }

    double star_of(double xi) const {
        xi = std::abs(xi);
        if (nondecreasing == Tri::yes) return psi_fast(xi);
        std::call_once(star_once, [this] { build_star(); });
        const Star& s = star;
        double p = psi_fast(xi);
        if (xi < s.xi.front()) return p;
        auto it = std::upper_bound(s.xi.begin(), s.xi.end(), xi);
        std::size_t i = static_cast<std::size_t>(it - s.xi.begin()) - 1;
        return std::max(s.runmax[i], p);
    }

    double base_star(double xi) const { return base->star_of(xi); }
};

// ---------------------------------------------------------------------------
// construction

namespace {

std::shared_ptr<SymbolSpec::Impl> new_impl(Family f, std::vector<double> params) {
    auto p = std::make_shared<SymbolSpec::Impl>();
    p->family = f;
    p->params = std::move(params);
    return p;
}

void add_stable_density(SymbolSpec::Impl& im, double scale, double alpha) {
    if (alpha >= 2.0) {
        im.sigma2 += scale;
        return;
    }
    const double c = scale * stable_density_constant(alpha);
    auto prev = im.density;
    if (prev) {
        im.density = [prev, c, alpha](double x) { return prev(x) + c * std::pow(x, -1.0 - alpha); };
    } else {
        im.density = [c, alpha](double x) { return c * std::pow(x, -1.0 - alpha); };
    }
}

double log_perturbed_density(double x) {
    double a = std::log(2.0 + 1.0 / x) / x;
    return a * a * std::log(2.0 + x);
}

void check_alpha(double alpha, const char* what, bool allow_two = true) {
    if (!(alpha > 0.0) || alpha > 2.0 || (!allow_two && alpha == 2.0))
        throw ArgumentError(std::string(what) + ": alpha must lie in (0, 2" + (allow_two ? "]" : ")") +
                            ", got " + std::to_string(alpha));
}

}  // namespace

SymbolSpec SymbolSpec::stable(double alpha) {
    check_alpha(alpha, "stable");
    auto im = new_impl(Family::stable, {alpha});
    im->closed = true;
    im->stable_parts = {{1.0, alpha}};
    add_stable_density(*im, 1.0, alpha);
    im->unimodal = Tri::yes;
    im->nondecreasing = Tri::yes;
    im->idx0 = alpha;
    im->idxinf = alpha;
    im->second_moment = alpha == 2.0;
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::brownian(double sigma2) {
    if (!(sigma2 > 0.0)) throw ArgumentError("brownian: sigma2 must be positive");
    auto im = new_impl(Family::brownian, {sigma2});
    im->closed = true;
    im->stable_parts = {{sigma2, 2.0}};
    im->sigma2 = sigma2;
    im->unimodal = Tri::yes;
    im->nondecreasing = Tri::yes;
    im->idx0 = 2.0;
    im->idxinf = 2.0;
    im->second_moment = true;
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::cauchy_plus_bm() {
    auto im = new_impl(Family::cauchy_plus_bm, {});
    im->closed = true;
    im->stable_parts = {{1.0, 1.0}, {1.0, 2.0}};
    add_stable_density(*im, 1.0, 1.0);
    im->sigma2 = 1.0;
    im->unimodal = Tri::yes;
    im->nondecreasing = Tri::yes;
    im->idx0 = 1.0;
    im->idxinf = 2.0;
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::two_stable(double a1, double a2) {
    check_alpha(a1, "two_stable");
    check_alpha(a2, "two_stable");
    auto im = new_impl(Family::two_stable, {a1, a2});
    im->closed = true;
    im->stable_parts = {{1.0, a1}, {1.0, a2}};
    add_stable_density(*im, 1.0, a1);
    add_stable_density(*im, 1.0, a2);
    // Sum of independent symmetric stable laws: symmetric unimodal (Wintner).
    im->unimodal = Tri::yes;
    im->nondecreasing = Tri::yes;
    im->idx0 = std::min(a1, a2);
    im->idxinf = std::max(a1, a2);
    im->second_moment = a1 == 2.0 && a2 == 2.0;
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::log_perturbed() {
    auto im = new_impl(Family::log_perturbed, {});
    im->density = log_perturbed_density;
    im->density_breaks = decade_breaks();
    im->unimodal = Tri::unknown;
    im->nondecreasing = Tri::yes;
    im->idx0 = 1.0;
    im->idxinf = 1.0;
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::atomic_stablelike(double alpha) {
    check_alpha(alpha, "atomic_stablelike", false);
    auto im = new_impl(Family::atomic_stablelike, {alpha});
    im->atomic_series = true;
    im->atomic_alpha = alpha;
    im->atomic_w.resize(2000);
    for (std::size_t k = 1; k <= im->atomic_w.size(); ++k)
        im->atomic_w[k - 1] = atomic_weight(static_cast<double>(k), alpha);
    im->support_end = 1.0;
    im->unimodal = Tri::no;
    im->nondecreasing = Tri::unknown;
    im->idx0 = 2.0;
    im->idxinf = alpha;
    im->second_moment = true;
    return SymbolSpec(im);
}

void LevyTriplet::validate() const {
    if (!(gaussian_coeff >= 0.0) || !std::isfinite(gaussian_coeff))
        throw ArgumentError("triplet: gaussian_coeff must be a finite nonnegative number");
    if (const auto* a = std::get_if<AtomList>(&levy_measure)) {
        for (auto [x, m] : a->atoms)
            if (!(x > 0.0) || !(m > 0.0) || !std::isfinite(x) || !std::isfinite(m))
                throw ArgumentError("triplet: atom positions and masses must be strictly positive");
    } else if (const auto* t = std::get_if<DensityTable>(&levy_measure)) {
        if (t->x.size() < 2 || t->x.size() != t->nu.size())
            throw ArgumentError("triplet: density table needs >= 2 matching (x, nu) rows");
        for (std::size_t i = 0; i < t->x.size(); ++i) {
            if (!(t->x[i] > 0.0) || !(t->nu[i] > 0.0))
                throw ArgumentError("triplet: density table entries must be positive");
            if (i > 0 && !(t->x[i] > t->x[i - 1]))
                throw ArgumentError("triplet: density table abscissae must increase");
        }
    } else if (const auto* g = std::get_if<DensityTag>(&levy_measure)) {
        if (g->name == "stable") {
            if (g->params.empty()) throw ArgumentError("triplet: stable density needs alpha");
            check_alpha(g->params[0], "stable density", false);
            if (g->params.size() > 1 && !(g->params[1] > 0.0))
                throw ArgumentError("triplet: stable density scale must be positive");
        } else if (g->name == "truncated_stable") {
            if (g->params.size() != 2) throw ArgumentError("triplet: truncated_stable needs alpha, cutoff");
            check_alpha(g->params[0], "truncated_stable", false);
            if (!(g->params[1] > 0.0)) throw ArgumentError("triplet: cutoff must be positive");
        } else if (g->name != "log_perturbed") {
            throw ArgumentError("triplet: unknown density tag '" + g->name + "'");
        }
    }
}

namespace {

struct TableDensity {
    std::vector<double> lx, lnu;
    double slope_lo = 0.0, slope_hi = 0.0;
    bool power_left = true, power_right = true;
    double xmin = 0.0, xmax = 0.0;

    explicit TableDensity(const DensityTable& t) {
        for (std::size_t i = 0; i < t.x.size(); ++i) {
            lx.push_back(std::log(t.x[i]));
            lnu.push_back(std::log(t.nu[i]));
        }
        slope_lo = (lnu[1] - lnu[0]) / (lx[1] - lx[0]);
        std::size_t n = lx.size();
        slope_hi = (lnu[n - 1] - lnu[n - 2]) / (lx[n - 1] - lx[n - 2]);
        power_left = t.power_left;
        power_right = t.power_right;
        xmin = t.x.front();
        xmax = t.x.back();
    }

    double operator()(double x) const {
        if (!(x > 0.0)) return 0.0;
        double l = std::log(x);
        if (x < xmin) return power_left ? std::exp(lnu.front() + slope_lo * (l - lx.front())) : 0.0;
        if (x > xmax) return power_right ? std::exp(lnu.back() + slope_hi * (l - lx.back())) : 0.0;
        return std::exp(pchip(lx, lnu, l));
    }
};

}  // namespace

SymbolSpec SymbolSpec::from_triplet(LevyTriplet tr, Tri unimodal, Tri nondecreasing) {
    tr.validate();
    auto im = new_impl(Family::triplet, {});
    im->sigma2 = tr.gaussian_coeff;
    im->unimodal = unimodal;
    im->nondecreasing = nondecreasing;
    std::optional<double> i0, iinf;
    bool m2 = true;
    if (const auto* g = std::get_if<DensityTag>(&tr.levy_measure)) {
        if (g->name == "stable") {
            double a = g->params[0];
            double c = g->params.size() > 1 ? g->params[1] : 1.0;
            add_stable_density(*im, c, a);
            im->closed = true;
            im->stable_parts = {{c, a}};
            if (tr.gaussian_coeff > 0) im->stable_parts.push_back({tr.gaussian_coeff, 2.0});
            i0 = a;
            iinf = tr.gaussian_coeff > 0 ? 2.0 : a;
            m2 = false;
        } else if (g->name == "truncated_stable") {
            double a = g->params[0], cut = g->params[1];
            double c = stable_density_constant(a);
            im->density = [c, a, cut](double x) { return x <= cut ? c * std::pow(x, -1.0 - a) : 0.0; };
            im->density_breaks = decade_breaks();
            im->density_breaks.push_back(cut);
            std::sort(im->density_breaks.begin(), im->density_breaks.end());
            im->support_end = cut;
            im->trunc_alpha = a;
            im->trunc_cut = cut;
            i0 = 2.0;
            iinf = tr.gaussian_coeff > 0 ? 2.0 : a;
        } else {
            im->density = log_perturbed_density;
            im->density_breaks = decade_breaks();
            i0 = 1.0;
            iinf = 1.0;
            m2 = false;
        }
    } else if (const auto* t = std::get_if<DensityTable>(&tr.levy_measure)) {
        TableDensity td(*t);
        im->density = td;
        im->density_breaks = decade_breaks();
        for (double x : t->x) im->density_breaks.push_back(x);
        std::sort(im->density_breaks.begin(), im->density_breaks.end());
        if (!t->power_right) im->support_end = t->x.back();
        m2 = !t->power_right || td.slope_hi < -3.0;
    } else if (const auto* a = std::get_if<AtomList>(&tr.levy_measure)) {
        im->atoms = a->atoms;
        double mx = 0.0;
        for (auto [x, m] : a->atoms) mx = std::max(mx, x);
        im->support_end = mx;
        i0 = 2.0;
        if (tr.gaussian_coeff > 0) iinf = 2.0;
        // Finitely many atoms: psi is a trigonometric sum, no table needed.
        if (tr.gaussian_coeff == 0.0) im->closed = false;
    } else {
        im->closed = true;
        if (tr.gaussian_coeff > 0) im->stable_parts = {{tr.gaussian_coeff, 2.0}};
        i0 = iinf = 2.0;
    }
    if (tr.gaussian_coeff > 0 && !iinf) iinf = 2.0;
    im->idx0 = i0;
    im->idxinf = iinf;
    im->second_moment = m2;
    im->triplet = std::move(tr);
    // Integrability of x^2 ^ 1 against nu.
    if (im->density && !im->closed) {
        auto f2 = [&](double x) { return x * x * im->density(x); };
        auto near = quad::panel(f2, 0.0, 1.0, inner_cfg(), im->density_breaks);
        auto far = quad::tail(im->density, 1.0, inner_cfg());
        if (!std::isfinite(near.value) || !std::isfinite(far.value) || !far.converged)
            throw ArgumentError("triplet: Levy measure does not integrate x^2 ^ 1");
    }
    return SymbolSpec(im);
}

SymbolSpec SymbolSpec::make_builtin(std::string_view family, std::span<const double> p) {
    auto need = [&](std::size_t n) {
        if (p.size() != n)
            throw ArgumentError("family '" + std::string(family) + "' takes " + std::to_string(n) +
                                " parameter(s), got " + std::to_string(p.size()));
    };
    if (family == "stable") { need(1); return stable(p[0]); }
    if (family == "brownian") {
        if (p.empty()) return brownian(1.0);
        need(1);
        return brownian(p[0]);
    }
    if (family == "cauchy_plus_bm") { need(0); return cauchy_plus_bm(); }
    if (family == "log_perturbed") { need(0); return log_perturbed(); }
    if (family == "atomic_stablelike") { need(1); return atomic_stablelike(p[0]); }
    if (family == "two_stable") { need(2); return two_stable(p[0], p[1]); }
    throw ArgumentError("unknown family '" + std::string(family) + "'");
}

// ---------------------------------------------------------------------------
// accessors

Family SymbolSpec::family() const { return impl_->family; }
const std::vector<double>& SymbolSpec::params() const { return impl_->params; }
const LevyTriplet* SymbolSpec::triplet() const {
    return impl_->triplet ? &*impl_->triplet : nullptr;
}
Tri SymbolSpec::is_unimodal() const { return impl_->unimodal; }
Tri SymbolSpec::psi_is_nondecreasing() const { return impl_->nondecreasing; }
bool SymbolSpec::is_maximal() const { return static_cast<bool>(impl_->base); }
std::optional<double> SymbolSpec::index_at_zero() const { return impl_->idx0; }
std::optional<double> SymbolSpec::index_at_infinity() const { return impl_->idxinf; }
bool SymbolSpec::finite_second_moment() const { return impl_->second_moment; }
bool SymbolSpec::has_closed_form() const { return impl_->closed; }
double SymbolSpec::gaussian_coeff() const { return impl_->sigma2; }

std::vector<std::pair<double, double>> SymbolSpec::stable_components() const {
    if (!impl_->closed || impl_->base) return {};
    return impl_->stable_parts;
}

std::string SymbolSpec::name() const {
    std::ostringstream os;
    if (impl_->base) return SymbolSpec(impl_->base).name() + "*";
    os << to_string(impl_->family);
    if (!impl_->params.empty()) {
        os << "(";
        for (std::size_t i = 0; i < impl_->params.size(); ++i) {
            char buf[32];
            auto end = std::to_chars(buf, buf + sizeof buf, impl_->params[i]).ptr;  // shortest round-trip
            os << (i ? "," : "") << std::string_view(buf, end - buf);
        }
        os << ")";
    }
    return os.str();
}

std::string SymbolSpec::canonical() const {
    if (impl_->base) return SymbolSpec(impl_->base).canonical() + "maximal = true\n";
    std::ostringstream os;
    os.precision(17);
    os << "[symbol]\nfamily = \"" << to_string(impl_->family) << "\"\n";
    const auto& p = impl_->params;
    switch (impl_->family) {
        case Family::stable: os << "alpha = " << p[0] << "\n"; break;
        case Family::atomic_stablelike: os << "alpha = " << p[0] << "\n"; break;
        case Family::brownian: os << "sigma2 = " << p[0] << "\n"; break;
        case Family::two_stable: os << "alpha1 = " << p[0] << "\nalpha2 = " << p[1] << "\n"; break;
        case Family::triplet: {
            const auto& tr = *impl_->triplet;
            os << "gaussian_coeff = " << tr.gaussian_coeff << "\n";
            os << "unimodal = \"" << to_string(impl_->unimodal) << "\"\n";
            os << "nondecreasing = \"" << to_string(impl_->nondecreasing) << "\"\n";
            os << "\n[symbol.levy_measure]\n";
            auto list = [&](const std::vector<double>& v) {
                os << "[";
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
                os << "]";
            };
            if (const auto* g = std::get_if<DensityTag>(&tr.levy_measure)) {
                os << "kind = \"tag\"\ntag = \"" << g->name << "\"\nparams = ";
                list(g->params);
                os << "\n";
            } else if (const auto* t = std::get_if<DensityTable>(&tr.levy_measure)) {
                os << "kind = \"table\"\nx = ";
                list(t->x);
                os << "\nnu = ";
                list(t->nu);
                os << "\npower_left = " << (t->power_left ? "true" : "false")
                   << "\npower_right = " << (t->power_right ? "true" : "false") << "\n";
            } else if (const auto* a = std::get_if<AtomList>(&tr.levy_measure)) {
                os << "kind = \"atoms\"\natoms = [";
                for (std::size_t i = 0; i < a->atoms.size(); ++i)
                    os << (i ? ", " : "") << "[" << a->atoms[i].first << ", " << a->atoms[i].second << "]";
                os << "]\n";
            } else {
                os << "kind = \"none\"\n";
            }
            break;
        }
        default: break;
    }
    return os.str();
}

std::uint64_t SymbolSpec::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double SymbolSpec::psi(double xi) const {
    if (!std::isfinite(xi)) throw ArgumentError("psi: xi must be finite");
    return impl_->psi_exact(xi);
}

double SymbolSpec::psi_fast(double xi) const {
    if (!std::isfinite(xi)) throw ArgumentError("psi: xi must be finite");
    return impl_->psi_fast(xi);
}

double SymbolSpec::psi_star(double xi) const {
    if (!(xi >= 0.0)) throw ArgumentError("psi_star: xi must be >= 0");
    if (xi == 0.0) return 0.0;
    if (impl_->base) return impl_->base_star(xi);
    return impl_->star_of(xi);
}

double SymbolSpec::psi_inverse(double u) const {
    if (!(u >= 0.0) || !std::isfinite(u)) throw ArgumentError("psi_inverse: u must be finite and >= 0");
    if (u == 0.0) return 0.0;
    const Impl& im = impl_->base ? *impl_->base : *impl_;
    if (im.closed && im.stable_parts.size() == 1) {
        auto [c, a] = im.stable_parts[0];
        return std::pow(u / c, 1.0 / a);
    }
    if (im.closed && im.stable_parts.size() == 2 && im.stable_parts[0] == std::pair{1.0, 1.0} &&
        im.stable_parts[1] == std::pair{1.0, 2.0}) {
        return 2.0 * u / (1.0 + std::sqrt(1.0 + 4.0 * u));
    }
    auto star = [&](double s) { return psi_star(s); };
    double lo = 1.0, hi = 1.0;
    int steps = 0;
    if (star(1.0) >= u) {
        while (star(lo) >= u) {
            hi = lo;
            lo /= 4.0;
            if (++steps > 200 || lo < 1e-300) throw NumericalError("psi_inverse: lower bracket not found", 0.0, lo);
        }
    } else {
        while (star(hi) < u) {
            lo = hi;
            hi *= 4.0;
            if (++steps > 200 || hi > 1e300)
                throw NumericalError("psi_inverse: symbol looks bounded on the probed range", 0.0, hi);
        }
    }
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-14; ++it) {
        double mid = std::sqrt(lo * hi);
        if (star(mid) >= u) hi = mid;
        else lo = mid;
    }
    return hi;
}

SymbolSpec SymbolSpec::maximal() const {
    if (impl_->base || impl_->nondecreasing == Tri::yes) return *this;
    auto im = std::make_shared<Impl>();
    im->family = impl_->family;
    im->params = impl_->params;
    im->base = impl_;
    im->unimodal = Tri::unknown;
    im->nondecreasing = Tri::yes;
    im->idx0 = impl_->idx0;
    im->idxinf = impl_->idxinf;
    im->second_moment = impl_->second_moment;
    return SymbolSpec(im);
}

bool SymbolSpec::has_density() const { return static_cast<bool>(impl_->density); }

double SymbolSpec::levy_density(double x) const {
    if (!impl_->density) return 0.0;
    return x > 0.0 ? impl_->density(x) : 0.0;
}

std::vector<std::pair<double, double>> SymbolSpec::atoms_in(double lo, double hi) const {
    std::vector<std::pair<double, double>> out;
    for (auto [x, m] : impl_->atoms)
        if (x >= lo && x < hi) out.emplace_back(x, m);
    if (impl_->atomic_series) {
        if (!(lo > 0.0)) throw ArgumentError("atoms_in: lower end must be positive for an infinite atom list");
        long kmin = static_cast<long>(std::floor(1.0 / hi)) + 1;  // 1/k < hi
        long kmax = static_cast<long>(std::floor(1.0 / lo));      // 1/k >= lo
        if (kmax - kmin > 50'000'000) throw ArgumentError("atoms_in: too many atoms requested");
        for (long k = std::max(1L, kmin); k <= kmax; ++k) {
            double x = 1.0 / static_cast<double>(k);
            if (x >= lo && x < hi) out.emplace_back(x, impl_->atomic_w_at(k));
        }
    }
    return out;
}

double SymbolSpec::small_jump_second_moment(double eps) const {
    if (!(eps > 0.0)) throw ArgumentError("small_jump_second_moment: eps must be positive");
    const Impl& im = *impl_;
    double s = 0.0;
    for (auto [x, m] : im.atoms)
        if (x < eps) s += m * x * x;
    if (im.atomic_series) {
        long k0 = static_cast<long>(std::floor(1.0 / eps)) + 1;
        long k1 = std::max<long>(k0 + 4000, 2 * k0);
        double acc = 0.0;
        for (long k = k0; k <= k1; ++k) acc += im.atomic_w_at(k) / (double(k) * double(k));
        auto f = [&](double k) { return atomic_weight(k, im.atomic_alpha) / (k * k); };
        double kk = static_cast<double>(k1);
        acc += quad::tail(f, kk, inner_cfg()).value - 0.5 * f(kk) - (f(kk + 0.5) - f(kk - 0.5)) / 12.0;
        s += acc;
    }
    if (im.density) {
        if (im.closed) {
            for (auto [c, a] : im.stable_parts)
                if (a < 2.0) s += c * stable_density_constant(a) * std::pow(eps, 2.0 - a) / (2.0 - a);
        } else {
            auto f2 = [&](double x) { return x * x * im.density(x); };
            s += quad::panel(f2, 0.0, eps, inner_cfg(), im.density_breaks).value;
        }
    }
    return s;
}

double SymbolSpec::jump_tail_mass(double eps) const {
    if (!(eps > 0.0)) throw ArgumentError("jump_tail_mass: eps must be positive");
    const Impl& im = *impl_;
    double s = 0.0;
    for (auto [x, m] : im.atoms)
        if (x >= eps) s += m;
    if (im.atomic_series) s += std::pow(std::floor(1.0 / eps), im.atomic_alpha);
    if (im.density) {
        if (im.closed) {
            for (auto [c, a] : im.stable_parts)
                if (a < 2.0) s += c * stable_density_constant(a) * std::pow(eps, -a) / a;
        } else {
            double end = std::min(im.support_end, 1e300);
            if (eps >= end) return s;
            if (std::isfinite(im.support_end)) {
                s += quad::panel(im.density, eps, end, inner_cfg(), im.density_breaks).value;
            } else {
                auto r = quad::tail(im.density, eps, inner_cfg());
                if (!r.converged) throw NumericalError("jump_tail_mass: tail not computable", r.error, r.truncation);
                s += r.value;
            }
        }
    }
    return s;
}

double SymbolSpec::jump_support_end() const { return impl_->support_end; }

// ---------------------------------------------------------------------------
// point regularity

Regularity classify_blocks(std::span<const double> c, double* tail, double* index) {
    const std::size_t n = c.size();
    if (tail) *tail = 0.0;
    if (index) *index = 0.0;
    if (n < 8) return Regularity::indeterminate;
    if (c[n - 1] == 0.0) {
        if (index) *index = kInf;
        return Regularity::regular;
    }
    // Decay index p from a log-log fit of c_k against k over the second half.
    std::vector<double> lk, lc;
    for (std::size_t k = n / 2; k < n; ++k) {
        if (!(c[k] > 0.0)) continue;
        lk.push_back(std::log(static_cast<double>(k + 1)));
        lc.push_back(std::log(c[k]));
    }
    if (lk.size() < 4) return Regularity::indeterminate;
    auto fit = polyfit(lk, lc, 1);
    double p = -fit[1];
    if (index) *index = p;
    double q = c[n - 1] / c[n - 2];
    if (p > 1.25) {
        if (tail) {
            if (q < 0.9) *tail = c[n - 1] * q / (1.0 - q);
            else *tail = c[n - 1] * static_cast<double>(n) / (p - 1.0);
        }
        return Regularity::regular;
    }
    if (p < 0.9) return Regularity::not_regular;
    // Borderline p ~ 1: compare k c_k at the end with its value half-way. A flat
    // k c_k is harmonic (divergent); a clear drop means a faster-than-1/k tail.
    std::size_t mid = n / 2;
    if (c[mid] > 0.0) {
        double rho = (static_cast<double>(n) * c[n - 1]) / (static_cast<double>(mid + 1) * c[mid]);
        if (rho >= 0.95) return Regularity::not_regular;
        if (rho <= 0.7 && p > 1.05) {
            if (tail) *tail = c[n - 1] * static_cast<double>(n) / (p - 1.0);
            return Regularity::regular;
        }
    }
    return Regularity::indeterminate;
}

DyadicResult dyadic_integral(const std::function<double(double)>& f, bool towards_infinity,
                             const QuadratureConfig& cfg, int max_blocks) {
    // Blocks [2^k, 2^{k+1}] (k >= 0) or [2^{-k-1}, 2^{-k}].
    DyadicResult out;
    std::vector<double> blocks;
    double sum = 0.0;
    int checkpoint = 40;
    for (int k = 0; k < max_blocks; ++k) {
        double a = towards_infinity ? std::ldexp(1.0, k) : std::ldexp(1.0, -k - 1);
        double b = 2.0 * a;
        auto g = [&](double v) {
            double s = a * std::exp(v);
            return f(s) * s;
        };
        auto r = quad::gk(g, 0.0, std::log(2.0), cfg);
        blocks.push_back(r.value);
        sum += r.value;
        out.truncation = towards_infinity ? b : a;
        if (k + 1 == checkpoint || k + 1 == max_blocks) {
            double tail = 0.0, p = 0.0;
            auto cls = classify_blocks(blocks, &tail, &p);
            out.decay_index = p;
            if (cls == Regularity::not_regular) {
                out.status = Regularity::not_regular;
                out.value = sum;
                return out;
            }
            if (cls == Regularity::regular && (blocks.back() <= 1e-17 * sum || tail <= cfg.rel_tol * sum ||
                                               k + 1 == max_blocks)) {
                out.status = Regularity::regular;
                out.value = sum + tail;
                return out;
            }
            if (k + 1 == max_blocks) {
                out.status = cls;
                out.value = sum + tail;
                return out;
            }
            checkpoint = std::min(2 * checkpoint, max_blocks);
        }
    }
    out.value = sum;
    return out;
}

RegularityResult check_point_regularity(const SymbolSpec& spec, const QuadratureConfig& cfg) {
    auto f = [&](double s) { return 1.0 / (1.0 + spec.psi_fast(s)); };
    RegularityResult res;
    auto head = quad::gk(f, 0.0, 1.0, cfg);
    auto t = dyadic_integral(f, true, cfg, 1000);
    res.status = t.status;
    res.value = head.value + t.value;
    res.truncation = t.truncation;
    res.decay_index = t.decay_index;
    return res;
}

// ---------------------------------------------------------------------------
// weak scaling

ScalingGrid ScalingGrid::refined() const {
    ScalingGrid g = *this;
    g.theta_min /= 10.0;
    g.theta_max *= 10.0;
    g.theta_points = 2 * theta_points + 8;
    g.lambda_exp_max = lambda_exp_max + 10;
    return g;
}

namespace {

double scaling_extreme(const SymbolSpec& spec, ScalingKind kind, double index, const ScalingGrid& g) {
    double best = kind == ScalingKind::wlsc ? kInf : 0.0;
    const double l0 = std::log(g.theta_min), l1 = std::log(g.theta_max);
    for (int i = 0; i < g.theta_points; ++i) {
        double th = std::exp(l0 + (l1 - l0) * i / (g.theta_points - 1));
        double base = spec.psi_fast(th);
        for (int j = 0; j <= g.lambda_exp_max; ++j) {
            double lam = std::ldexp(1.0, j);
            double r = spec.psi_fast(lam * th) / (std::pow(lam, index) * base);
            best = kind == ScalingKind::wlsc ? std::min(best, r) : std::max(best, r);
        }
    }
    return best;
}

}  // namespace

ScalingCertificate certify_scaling(const SymbolSpec& spec, ScalingKind kind, double index,
                                   const ScalingGrid& grid) {
    if (grid.theta_points < 2 || grid.lambda_exp_max < 1 || !(grid.theta_min > 0.0) ||
        !(grid.theta_max > grid.theta_min))
        throw ArgumentError("certify_scaling: degenerate grid (need >= 2 scales)");
    if (kind == ScalingKind::wlsc && !(index > 0.0)) throw ArgumentError("certify_scaling: WLSC index must be > 0");
    if (kind == ScalingKind::wusc && !(index < 2.0)) throw ArgumentError("certify_scaling: WUSC index must be < 2");
    ScalingCertificate c;
    c.kind = kind;
    c.index = index;
    c.grid = grid;
    c.coefficient = scaling_extreme(spec, kind, index, grid);
    c.refined_coefficient = scaling_extreme(spec, kind, index, grid.refined());
    if (kind == ScalingKind::wlsc) {
        c.max_violation = c.coefficient > 0.0 ? (c.coefficient - c.refined_coefficient) / c.coefficient : kInf;
        c.passing = c.refined_coefficient > 0.0 && c.coefficient <= 1.0 + 1e-12 && c.max_violation <= c.tolerance;
    } else {
        c.max_violation = std::isfinite(c.refined_coefficient)
                              ? (c.refined_coefficient - c.coefficient) / c.coefficient
                              : kInf;
        c.passing = std::isfinite(c.refined_coefficient) && c.coefficient >= 1.0 - 1e-12 &&
                    c.max_violation <= c.tolerance;
    }
    return c;
}

}  // namespace levyhit
