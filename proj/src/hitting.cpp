#include "levyhit/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <tuple>

#include "levyhit/error.hpp"
#include "levyhit/interp.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/parallel.hpp"

namespace levyhit {

namespace {

constexpr double kPi = std::numbers::pi;
// Calibrated constants are widened by this fraction (grid extremes are not the
// true extremes, and Monte Carlo ratios carry noise).
constexpr double kMargin = 0.10;

double K(const SymbolSpec& spec, double x) { return kernel_K(spec, x).value; }

void require_regular(const SymbolSpec& spec, const char* who) {
    if (check_point_regularity(spec).status != Regularity::regular)
        throw HypothesisError(std::string(who) + ": points are not regular for this spec",
                              "point regularity (int 1/(1 + psi) < inf)");
}

template <class Key, class Value>
class Cache {
public:
    template <class Make>
    Value get(const Key& key, Make&& make) {
        {
            std::lock_guard lk(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        Value v = make();
        std::lock_guard lk(mu_);
        return map_.emplace(key, std::move(v)).first->second;
    }

private:
    std::mutex mu_;
    std::map<Key, Value> map_;
};

ScalingCertificate certify_declared(const SymbolSpec& spec, ScalingKind kind) {
    auto i0 = spec.index_at_zero();
    auto i1 = spec.index_at_infinity();
    ScalingCertificate none;
    none.kind = kind;
    if (!i0 || !i1) return none;
    if (kind == ScalingKind::wlsc) {
        const double a = std::min(*i0, *i1);
        none.index = a;
        if (!(a > 1.0)) return none;
        auto c = certify_scaling(spec, kind, a);
        if (!c.passing) c = certify_scaling(spec, kind, 0.5 * (a + 1.0));
        return c;
    }
    const double b = std::max(*i0, *i1);
    none.index = b;
    if (!(b < 2.0)) return none;
    auto c = certify_scaling(spec, kind, b);
    if (!c.passing) c = certify_scaling(spec, kind, 0.5 * (b + 2.0));
    return c;
}

double clamp_one(double v, bool& clamped) {
    if (v > 1.0) {
        clamped = true;
        return 1.0;
    }
    return v;
}

}  // namespace

std::string to_string(Provenance p) { return p == Provenance::proven ? "proven" : "empirical"; }

std::string to_string(Regime r) {
    switch (r) {
        case Regime::point_general: return "point-general";
        case Regime::point_comparable: return "point-comparable";
        case Regime::point_unimodal: return "point-unimodal";
        case Regime::point_wlsc: return "point-wlsc";
        case Regime::interval_short_t: return "interval-short-t";
        case Regime::interval_long_t: return "interval-long-t";
        case Regime::asymptotic: return "asymptotic";
        case Regime::escape: return "escape";
    }
    return "?";
}

std::string to_string(PointMode m) {
    switch (m) {
        case PointMode::general: return "general";
        case PointMode::comparable: return "comparable";
        case PointMode::unimodal: return "unimodal";
        case PointMode::wlsc: return "wlsc";
    }
    return "?";
}

PointMode point_mode_from_string(const std::string& s) {
    if (s == "general") return PointMode::general;
    if (s == "comparable") return PointMode::comparable;
    if (s == "unimodal") return PointMode::unimodal;
    if (s == "wlsc") return PointMode::wlsc;
    throw ArgumentError("unknown point mode '" + s + "' (general, comparable, unimodal, wlsc)");
}

// ---------------------------------------------------------------------------
// hypotheses

ComparabilityCertificate certify_comparability(const SymbolSpec& spec) {
    static Cache<std::uint64_t, ComparabilityCertificate> cache;
    return cache.get(spec.hash(), [&] {
        auto worst = [&](double lo, double hi, int n) {
            double a = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) {
                const double xi = lo * std::pow(hi / lo, i / double(n - 1));
                const double ps = spec.psi_star(xi);
                if (ps > 0.0) a = std::min(a, spec.psi(xi) / ps);
            }
            return std::min(a, 1.0);
        };
        ComparabilityCertificate c;
        c.a = worst(1e-6, 1e6, 241);
        c.a_refined = worst(1e-7, 1e7, 561);
        c.passing = c.a_refined > 0.0 && std::abs(c.a - c.a_refined) <= 0.05 * c.a;
        return c;
    });
}

ScalingCertificate wlsc_above_one(const SymbolSpec& spec) {
    static Cache<std::uint64_t, ScalingCertificate> cache;
    return cache.get(spec.hash(), [&] { return certify_declared(spec, ScalingKind::wlsc); });
}

ScalingCertificate wusc_below_two(const SymbolSpec& spec) {
    static Cache<std::uint64_t, ScalingCertificate> cache;
    return cache.get(spec.hash(), [&] { return certify_declared(spec, ScalingKind::wusc); });
}

MonotonicityReport check_K_monotone(const SymbolSpec& spec, int points) {
    if (points < 2) throw ArgumentError("check_K_monotone: need at least 2 points");
    static Cache<std::pair<std::uint64_t, int>, MonotonicityReport> cache;
    return cache.get({spec.hash(), points}, [&] {
        MonotonicityReport rep;
        rep.points = points;
        if (spec.is_unimodal() == Tri::yes) {
            rep.nondecreasing = Tri::yes;
            rep.source = "unimodal flag";
            return rep;
        }
        rep.source = "grid";
        std::vector<KernelValue> k(points);
        parallel_for(points, [&](std::size_t i) {
            const double x = 1e-4 * std::pow(1e8, double(i) / (points - 1));
            k[i] = kernel_K(spec, x);
        });
        bool failed = false;
        bool decreased = false;
        for (int i = 0; i + 1 < points; ++i) {
            if (!k[i].converged || !k[i + 1].converged) failed = true;
            const double noise = k[i].achieved_tol + k[i + 1].achieved_tol + 1e-10 * k[i].value;
            const double drop = k[i].value - k[i + 1].value;
            if (drop > noise) {
                decreased = true;
                rep.worst_drop = std::max(rep.worst_drop, drop / k[i].value);
            }
        }
        rep.nondecreasing = decreased ? Tri::no : (failed ? Tri::unknown : Tri::yes);
        return rep;
    });
}

// ---------------------------------------------------------------------------
// point target

namespace {

struct PointSetup {
    double a = 0.0;            // comparability coefficient used for the (7/a) form (0: none)
    Provenance a_provenance = Provenance::proven;
    std::string a_name;
    Regime regime = Regime::point_general;
    bool lower_available = false;
    std::vector<std::string> notes;
};

PointSetup point_setup(const SymbolSpec& spec, const PointModeConfig& mode, const ProvenConstants& pc) {
    PointSetup s;
    switch (mode.mode) {
        case PointMode::general:
            s.regime = Regime::point_general;
            break;
        case PointMode::comparable: {
            s.regime = Regime::point_comparable;
            auto cert = certify_comparability(spec);
            if (mode.a > 0.0) {
                if (!(cert.passing && std::min(cert.a, cert.a_refined) >= mode.a * (1.0 - 1e-9)))
                    throw HypothesisError("point_tail_band: psi >= a psi* not certified for a = " +
                                              std::to_string(mode.a),
                                          "comparability certificate psi >= a psi*");
                s.a = mode.a;
                s.a_provenance = Provenance::proven;
            } else {
                if (!cert.passing || !(cert.a_refined > 0.0))
                    throw HypothesisError("point_tail_band: no stable comparability coefficient",
                                          "comparability certificate psi >= a psi*");
                s.a = std::min(cert.a, cert.a_refined);
                s.a_provenance = Provenance::empirical;
            }
            s.a_name = "a (psi >= a psi*)";
            break;
        }
        case PointMode::unimodal:
            if (spec.is_unimodal() != Tri::yes)
                throw HypothesisError("point_tail_band: unimodal mode needs a unimodal spec", "unimodal = yes");
            s.regime = Regime::point_unimodal;
            s.a = pc.unimodal_comparability;
            s.a_name = "a = pi^-2 (unimodal)";
            break;
        case PointMode::wlsc: {
            auto cert = wlsc_above_one(spec);
            if (!cert.passing || !(cert.index > 1.0))
                throw HypothesisError("point_tail_band: wlsc mode needs a lower scaling certificate",
                                      "WLSC(alpha > 1)");
            s.regime = Regime::point_wlsc;
            s.a = std::min(cert.coefficient, cert.refined_coefficient);
            s.a_provenance = Provenance::empirical;
            s.a_name = "gamma (WLSC coefficient, psi >= gamma psi*)";
            break;
        }
    }
    if (mode.mode == PointMode::wlsc) {
        s.lower_available = true;
    } else {
        auto mono = check_K_monotone(spec);
        s.lower_available = mono.nondecreasing == Tri::yes;
        if (!s.lower_available) s.notes.push_back("no lower bound: K is not known to be nondecreasing");
    }
    return s;
}

struct PointPieces {
    double s = 0.0;  // psi^{-1}(1/t)
    double Kx = 0.0, Kr = 0.0, Ktilde = 0.0;
    double central() const { return std::min(Kx / Kr, 1.0); }
};

PointPieces point_pieces(const SymbolSpec& spec, double x, double t) {
    PointPieces p;
    p.s = spec.psi_inverse(1.0 / t);
    const double r = 1.0 / p.s;
    p.Kx = K(spec, x);
    p.Kr = K(spec, r);
    p.Ktilde = kernel_K(spec, r, {}, KernelSymbol::psi_star).value;
    return p;
}

}  // namespace

PointCalibration calibrate_point_band(const SymbolSpec& spec, const PointModeConfig& mode) {
    require_regular(spec, "calibrate_point_band");
    static Cache<std::tuple<std::uint64_t, int, double>, PointCalibration> cache;
    return cache.get({spec.hash(), static_cast<int>(mode.mode), mode.a}, [&] {
        const std::vector<double> xs = {0.13, 0.47, 1.7, 6.1, 22.0};
        const std::vector<double> ts = {0.037, 0.29, 2.3, 18.0, 140.0};
        std::vector<double> ratios(xs.size() * ts.size());
        parallel_for(ts.size(), [&](std::size_t it) {
            const double t = ts[it];
            auto tails = laplace_point_tail(spec, xs, t);
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
                auto p = point_pieces(spec, xs[ix], t);
                ratios[it * xs.size() + ix] = tails[ix] / p.central();
            }
        });
        PointCalibration c;
        c.c_lower = (1.0 - kMargin) * *std::min_element(ratios.begin(), ratios.end());
        c.c_upper = (1.0 + kMargin) * *std::max_element(ratios.begin(), ratios.end());
        c.points = static_cast<int>(ratios.size());
        c.sandwich_c1 = renewal_sandwich_constant(spec, cached_profile(spec)).c;
        return c;
    });
}

EstimateBand point_tail_band(const SymbolSpec& spec, double x, double t, const PointModeConfig& mode,
                             const ProvenConstants& pc) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("point_tail_band: t must be positive");
    if (!std::isfinite(x)) throw ArgumentError("point_tail_band: x must be finite");
    require_regular(spec, "point_tail_band");
    auto setup = point_setup(spec, mode, pc);
    EstimateBand b;
    b.regime = setup.regime;
    b.notes = setup.notes;
    x = std::abs(x);
    b.constants_used.push_back({"7 (upper, K~ form)", pc.tail_upper_tilde, Provenance::proven});
    b.constants_used.push_back({"51 pi^3 (upper, explicit form)", pc.tail_upper_explicit, Provenance::proven});
    if (x == 0.0) {
        b.lower = b.upper = b.central = 0.0;
        b.notes.push_back("x = 0: T_0 = 0 almost surely");
        return b;
    }
    auto p = point_pieces(spec, x, t);
    b.central = p.central();
    const double up_tilde = pc.tail_upper_tilde * p.Kx / p.Ktilde;
    const double up_explicit = pc.tail_upper_explicit * p.Kx / (t * p.s);
    bool cl = false;
    b.alternates["upper_tilde"] = clamp_one(up_tilde, cl);
    b.alternates["upper_explicit"] = clamp_one(up_explicit, cl);
    double upper = std::min(up_tilde, up_explicit);
    if (setup.a > 0.0) {
        const double up_a = pc.tail_upper_tilde / setup.a * p.Kx / p.Kr;
        b.alternates["upper_comparable"] = clamp_one(up_a, cl);
        b.constants_used.push_back({setup.a_name, setup.a, setup.a_provenance});
        upper = std::min(upper, up_a);
    }
    b.upper = clamp_one(upper, b.clamped);
    if (mode.mode == PointMode::wlsc) {
        const double w = 1.0 / (t * p.s * x * spec.psi(1.0 / x));
        b.alternates["wlsc_expression"] = std::min(w, 1.0);
    }
    if (setup.lower_available) {
        auto cal = calibrate_point_band(spec, mode);
        if (mode.mode == PointMode::wlsc) {
            b.constants_used.push_back({"c (lower, scaling-dependent)", cal.c_lower, Provenance::empirical});
        } else {
            b.constants_used.push_back({"C1 (renewal sandwich)", cal.sandwich_c1, Provenance::empirical});
            b.constants_used.push_back({"C3/(6 C1) (lower)", cal.c_lower, Provenance::empirical});
        }
        b.constants_used.push_back({"comparability upper (oracle / central)", cal.c_upper, Provenance::empirical});
        b.constants_used.push_back({"calibration margin", kMargin, Provenance::empirical});
        b.alternates["central_upper"] = std::min(cal.c_upper * b.central, 1.0);
        b.lower = cal.c_lower * b.central;
        if (b.lower > b.upper) {
            b.notes.push_back("calibrated lower exceeded the explicit upper bound; lower cut to upper");
            b.lower = b.upper;
        }
    }
    return b;
}

OptimalRadius point_tail_optimal_R(const SymbolSpec& spec, double x, double t, const ProvenConstants& pc) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("point_tail_optimal_R: t must be positive");
    auto kap = transience_kappa(spec);
    if (kap.status != KappaStatus::recurrent)
        throw HypothesisError("point_tail_optimal_R: needs a recurrent process", "kappa = 0");
    if (check_K_monotone(spec).nondecreasing != Tri::yes)
        throw HypothesisError("point_tail_optimal_R: K is not known to be nondecreasing", "K nondecreasing");
    auto g = [&](double R) { return R * K(spec, R) - t; };
    double lo = 1.0 / spec.psi_inverse(1.0 / t);
    double hi = lo;
    while (g(lo) > 0.0) lo *= 0.5;
    while (g(hi) < 0.0) hi *= 2.0;
    // bisection in log R
    while (hi / lo - 1.0 > 1e-10) {
        const double mid = std::sqrt(lo * hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    OptimalRadius o;
    o.R_t = std::sqrt(lo * hi);
    o.bound = std::min(pc.tail_upper_optimal * K(spec, std::abs(x)) / K(spec, o.R_t), 1.0);
    return o;
}

// ---------------------------------------------------------------------------
// interval target

IntervalShape interval_shape(const SymbolSpec& spec, double x, double R, double t) {
    if (!(R > 0.0)) throw ArgumentError("interval_shape: R must be positive");
    if (!(std::abs(x) > R)) throw ArgumentError("interval_shape: need |x| > R");
    if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("interval_shape: t must be positive");
    const auto& prof = cached_profile(spec);
    const double ax = std::abs(x);
    IntervalShape s;
    s.t_split = 1.0 / spec.psi_star(1.0 / R);
    const double vgap = prof.V(ax - R);
    if (spec.finite_second_moment()) {
        s.single_form = true;
        s.regime = t <= s.t_split ? Regime::interval_short_t : Regime::interval_long_t;
        s.central = s.alternate = std::min(vgap / std::sqrt(t), 1.0);
        return s;
    }
    if (t <= s.t_split) {
        s.regime = Regime::interval_short_t;
        s.central = s.alternate = std::min(vgap / std::min(std::sqrt(t), prof.V(R)), 1.0);
        return s;
    }
    s.regime = Regime::interval_long_t;
    const double si = spec.psi_inverse(1.0 / t);
    const double base = vgap * K(spec, ax) / prof.V(ax);
    s.central = std::min(base / (t * si), 1.0);
    s.alternate = std::min(base / K(spec, 1.0 / si), 1.0);
    return s;
}

IntervalCalibration calibrate_interval_band(const SymbolSpec& spec, double R, const McConfig& mc) {
    if (!(R > 0.0)) throw ArgumentError("calibrate_interval_band: R must be positive");
    const double split = 1.0 / spec.psi_star(1.0 / R);
    std::vector<double> xs, ts;
    for (double f : {1.3, 1.75, 2.6, 4.5, 9.0}) xs.push_back(f * R);
    for (double f : {0.06, 0.35, 1.8, 7.0, 30.0}) ts.push_back(f * split);
    auto grid = simulate_hitting_grid(spec, xs, R, ts, mc);
    IntervalCalibration c;
    c.R = R;
    c.mc = mc;
    double slo = std::numeric_limits<double>::infinity(), shi = 0.0;
    double llo = slo, lhi = 0.0;
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        for (std::size_t it = 0; it < ts.size(); ++it) {
            const double est = grid.at(ix, it).fine.estimate;
            if (!(est > 0.0)) continue;
            auto sh = interval_shape(spec, xs[ix], R, ts[it]);
            const double ratio = est / sh.central;
            if (sh.regime == Regime::interval_short_t) {
                slo = std::min(slo, ratio);
                shi = std::max(shi, ratio);
                ++c.short_points;
            } else {
                llo = std::min(llo, ratio);
                lhi = std::max(lhi, ratio);
                ++c.long_points;
            }
        }
    }
    if (c.short_points == 0 || c.long_points == 0)
        throw InsufficientSampleError("calibrate_interval_band: a regime has no usable calibration point", 0.0);
    c.short_lower = (1.0 - kMargin) * slo;
    c.short_upper = (1.0 + kMargin) * shi;
    c.long_lower = (1.0 - kMargin) * llo;
    c.long_upper = (1.0 + kMargin) * lhi;
    return c;
}

EstimateBand interval_tail_band(const SymbolSpec& spec, double x, double R, double t,
                                const IntervalCalibration* calibration) {
    auto cert = wlsc_above_one(spec);
    if (!cert.passing || !(cert.index > 1.0))
        throw HypothesisError("interval_tail_band: needs a lower scaling certificate", "WLSC(alpha > 1)");
    auto sh = interval_shape(spec, x, R, t);
    EstimateBand b;
    b.regime = sh.regime;
    b.central = sh.central;
    b.alternates["t_split"] = sh.t_split;
    if (sh.regime == Regime::interval_long_t) b.alternates["central_K_form"] = sh.alternate;
    if (sh.single_form) b.notes.push_back("finite second moment: single expression V(|x| - R)/sqrt(t) ^ 1");
    b.constants_used.push_back({"gamma (WLSC coefficient)", cert.coefficient, Provenance::empirical});
    if (!calibration) {
        b.lower = 0.0;
        b.upper = 1.0;
        b.notes.push_back("uncalibrated: comparability constants unknown, band is [0, 1]");
        return b;
    }
    if (calibration->R != R) throw ArgumentError("interval_tail_band: calibration was made for another R");
    const bool short_t = sh.regime == Regime::interval_short_t;
    const double lo = short_t ? calibration->short_lower : calibration->long_lower;
    const double hi = short_t ? calibration->short_upper : calibration->long_upper;
    b.constants_used.push_back({"c_lower", lo, Provenance::empirical});
    b.constants_used.push_back({"c_upper", hi, Provenance::empirical});
    b.constants_used.push_back({"calibration margin", kMargin, Provenance::empirical});
    b.lower = std::min(lo * sh.central, 1.0);
    b.upper = clamp_one(hi * sh.central, b.clamped);
    return b;
}

// ---------------------------------------------------------------------------
// asymptotics

double asymptotic_factor(double delta) {
    if (!(delta >= 1.0 && delta <= 2.0)) throw ArgumentError("asymptotic_factor: delta must lie in [1, 2]");
    if (delta == 1.0) return 1.0;
    const double s = std::sin(kPi / delta);
    return delta * std::tgamma(1.0 - 1.0 / delta) * s * s / kPi;
}

double asymptotic_normalizer(const SymbolSpec& spec, double t, double delta) {
    if (!(t > 0.0)) throw ArgumentError("asymptotic_normalizer: t must be positive");
    const double si = spec.psi_inverse(1.0 / t);
    if (delta > 1.0) return t * si;
    auto r = quad::tail([&](double s) { return 1.0 / spec.psi_fast(s); }, si, QuadratureConfig{});
    if (!r.converged && r.error > 1e-8 * std::abs(r.value))
        throw NumericalError("asymptotic_normalizer: L(1/t) integral did not converge", r.error, r.truncation);
    return r.value / kPi;
}

AsymptoticResult tail_asymptotic(const SymbolSpec& spec, double x, const AsymptoticTarget& target,
                                 std::optional<double> delta, const AsymptoticOptions& opt) {
    if (!delta) delta = spec.index_at_zero();
    if (!delta)
        throw HypothesisError("tail_asymptotic: no declared index of regular variation at 0",
                              "declared index at 0");
    if (!(*delta >= 1.0 && *delta <= 2.0))
        throw HypothesisError("tail_asymptotic: index " + std::to_string(*delta) + " outside [1, 2]",
                              "regular variation at 0 with index in [1, 2]");
    if (!(target.R >= 0.0)) throw ArgumentError("tail_asymptotic: R must be >= 0");
    require_regular(spec, "tail_asymptotic");
    AsymptoticResult res;
    res.delta = *delta;
    res.normalizer = *delta > 1.0 ? "t psi^{-1}(1/t)" : "L(1/t)";
    const double factor = asymptotic_factor(*delta);
    if (target.R == 0.0) {
        res.shift = target.center;
        res.constant = factor * K(spec, x - target.center);
        return res;
    }
    // 0 must lie in the target: shift x and B by -center.
    res.shift = target.center;
    res.stochastic = true;
    const double xs = x - target.center;
    if (std::abs(xs) <= target.R) return res;
    auto run = simulate_hitting(spec, xs, target.R, opt.horizon, opt.mc, true);
    // K on [0, R] tabulated once; hit positions are read off the table.
    std::vector<double> grid(257), kv(257);
    double kmax = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = target.R * double(i) / double(grid.size() - 1);
        kv[i] = i == 0 ? 0.0 : K(spec, grid[i]);
        kmax = std::max(kmax, kv[i]);
    }
    const double n = static_cast<double>(opt.mc.n_paths);
    double s1 = 0.0, s2 = 0.0;
    for (double pos : run.hit_positions) {
        const double k = pchip(grid, kv, std::min(std::abs(pos), target.R));
        s1 += k;
        s2 += k * k;
    }
    res.unhit_fraction = 1.0 - static_cast<double>(run.hit_positions.size()) / n;
    // Paths still outside at the horizon contribute an unknown K value in [0, kmax]:
    // take the midpoint and widen the error by the half-range.
    const double mean = s1 / n + 0.5 * kmax * res.unhit_fraction;
    const double var = std::max(0.0, s2 / n - (s1 / n) * (s1 / n));
    res.expected_K_at_hit = mean;
    res.std_error = factor * (std::sqrt(var / n) + 0.5 * kmax * res.unhit_fraction);
    res.constant = factor * (K(spec, xs) - mean);
    return res;
}

// ---------------------------------------------------------------------------
// exit from (-R, R) \ {0}

ExitEscapeBounds exit_escape_bounds(const SymbolSpec& spec, double x, double R, const ProvenConstants& pc) {
    if (!(R > 0.0) || !std::isfinite(R)) throw ArgumentError("exit_escape_bounds: R must be positive");
    if (!(std::abs(x) > 0.0 && std::abs(x) < R)) throw ArgumentError("exit_escape_bounds: need 0 < |x| < R");
    ExitEscapeBounds out;
    const double kx = K(spec, std::abs(x));
    out.expectation_bound = pc.exit_time * R * kx;
    if (check_K_monotone(spec).nondecreasing != Tri::yes)
        throw HypothesisError("exit_escape_bounds: K is not known to be nondecreasing", "K nondecreasing");
    const double kr = K(spec, R);
    EstimateBand& b = out.escape;
    b.regime = Regime::escape;
    b.central = kx / kr;
    b.lower = pc.escape_lower * kx / kr;
    b.constants_used.push_back({"1/6 (escape lower)", pc.escape_lower, Provenance::proven});
    if (transience_kappa(spec).status == KappaStatus::recurrent) {
        b.upper = clamp_one(pc.escape_upper * kx / kr, b.clamped);
        b.constants_used.push_back({"4 (escape upper)", pc.escape_upper, Provenance::proven});
    } else {
        b.upper = 1.0;
        b.notes.push_back("upper half needs kappa = 0; upper set to 1");
    }
    b.lower = std::min(b.lower, b.upper);
    return out;
}

}  // namespace levyhit
