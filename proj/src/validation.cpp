#include "levyhit/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "levyhit/error.hpp"
#include "levyhit/io.hpp"
#include "levyhit/kernels.hpp"
#include "levyhit/oracle.hpp"
#include "levyhit/parallel.hpp"
#include "levyhit/renewal.hpp"

namespace levyhit {

std::string to_string(Suite s) {
    switch (s) {
        case Suite::quick: return "quick";
        case Suite::mc: return "mc";
        default: return "full";
    }
}

Suite suite_from_string(const std::string& s) {
    if (s == "quick") return Suite::quick;
    if (s == "mc") return Suite::mc;
    if (s == "full") return Suite::full;
    throw ArgumentError("unknown suite '" + s + "' (quick, mc, full)");
}

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::skip: return "skip";
        default: return "fail";
    }
}

nlohmann::json CheckResult::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["criterion"] = criterion;
    j["anchor"] = anchor;
    if (!spec.empty()) j["spec"] = spec;
    j["monte_carlo"] = mc;
    j["status"] = to_string(status);
    j["measured"] = measured;
    j["tolerances"] = tolerances;
    j["message"] = message;
    return j;
}

bool ValidationReport::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json j;
    j["suite"] = to_string(suite);
    j["seed"] = seed;
    j["specs"] = specs;
    j["tool_version"] = kToolVersion;
    j["checks"] = nlohmann::json::array();
    int pass = 0, fail = 0, skip = 0;
    for (const auto& c : checks) {
        j["checks"].push_back(c.to_json());
        (c.status == CheckStatus::pass ? pass : c.status == CheckStatus::fail ? fail : skip)++;
    }
    j["summary"] = {{"passed", pass}, {"failed", fail}, {"skipped", skip}, {"all_passed", fail == 0}};
    nlohmann::json crit = nlohmann::json::object();
    for (auto [k, ok] : criteria()) crit[std::to_string(k)] = ok ? "pass" : "fail";
    j["criteria"] = crit;
    return j;
}

std::map<int, bool> ValidationReport::criteria() const {
    std::map<int, bool> out;
    for (const auto& c : checks) {
        if (c.criterion == 0) continue;
        auto [it, fresh] = out.emplace(c.criterion, true);
        if (c.status == CheckStatus::fail) it->second = false;
    }
    return out;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    int pass = 0, fail = 0, skip = 0;
    for (const auto& c : checks) {
        (c.status == CheckStatus::pass ? pass : c.status == CheckStatus::fail ? fail : skip)++;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%7.1fs", c.seconds);
        os << (c.status == CheckStatus::pass ? "PASS " : c.status == CheckStatus::fail ? "FAIL " : "SKIP ") << buf
           << "  " << c.name;
        if (!c.spec.empty()) os << " [" << c.spec << "]";
        if (!c.message.empty()) os << "  -- " << c.message;
        os << "\n";
    }
    os << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
    return os.str();
}

namespace {

using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

double K(const SymbolSpec& s, double x) { return kernel_K(s, x).value; }
double Ktilde(const SymbolSpec& s, double x) { return kernel_K(s, x, {}, KernelSymbol::psi_star).value; }

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

std::vector<double> logspace(double a, double b, int n) {
    auto v = linspace(std::log(a), std::log(b), n);
    for (auto& x : v) x = std::exp(x);
    return v;
}

double log_uniform(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Shared, lazily computed data (random tail samples, HK runs) for one validation run.
struct TailSample {
    double x, t, oracle, Kx, Kr, Kt, s;  // s = psi^{-1}(1/t), Kr = K(1/s), Kt = K~(1/s)
};

struct Shared {
    std::map<std::string, std::vector<TailSample>> tails;
    std::map<long, HkProductReport> hk;
    double interval_seconds = 0.0;  // criterion 7 budget covers both interval checks
};

struct Ctx {
    const ValidationOptions& opt;
    Shared& shared;
    CheckResult& r;
    Rng rng;

    long paths(long n) const { return std::max<long>(200, std::llround(static_cast<double>(n) * opt.mc_scale)); }
    void verdict(bool ok, const std::string& msg = {}) {
        r.status = ok ? CheckStatus::pass : CheckStatus::fail;
        if (!msg.empty()) r.message = msg;
    }
};

using CheckFn = std::function<void(Ctx&, const SymbolSpec&)>;

struct CheckDef {
    CheckInfo info;
    CheckFn fn;
    std::function<SymbolSpec()> fixed_spec;  // criterion checks; generic checks get each user spec
};

// ---------------------------------------------------------------------------
// shared computations

const std::vector<TailSample>& tail_samples(Ctx& c, const SymbolSpec& spec) {
    const std::string key = spec.name();
    auto it = c.shared.tails.find(key);
    if (it != c.shared.tails.end()) return it->second;
    Rng rng(c.opt.seed ^ fnv1a("tail-samples:" + key));
    std::vector<TailSample> v(1000);
    for (auto& p : v) {
        p.x = log_uniform(rng, 1e-2, 1e2);
        p.t = log_uniform(rng, 1e-2, 1e2);
    }
    parallel_for(v.size(), [&](std::size_t i) {
        auto& p = v[i];
        p.oracle = laplace_point_tail(spec, p.x, p.t);
        p.s = spec.psi_inverse(1.0 / p.t);
        p.Kx = K(spec, p.x);
        p.Kr = K(spec, 1.0 / p.s);
        p.Kt = Ktilde(spec, 1.0 / p.s);
    });
    return c.shared.tails.emplace(key, std::move(v)).first->second;
}

const double kHkX[] = {1.5, 2.5, 4.0};
const double kHkY[] = {1.5, 2.5, -2.5};
const double kHkT[] = {0.5, 2.0};

const HkProductReport& hk_run(Ctx& c, long n) {
    auto it = c.shared.hk.find(n);
    if (it != c.shared.hk.end()) return it->second;
    auto st = SymbolSpec::stable(1.5);
    McConfig mc;
    mc.n_paths = n;
    mc.h = 1e-3;
    mc.seed = c.opt.seed;
    auto rep = hk_product_check(st, 1.0, kHkX, kHkY, kHkT, mc, wlsc_above_one(st), wusc_below_two(st));
    return c.shared.hk.emplace(n, std::move(rep)).first->second;
}

// Worst ratio value / bound over tail samples plus violation count (bound already
// clamped at 1, tolerance for inversion noise).
struct UpperStats {
    int violations = 0;
    int clamped = 0;     // points where the bound exceeds 1
    double worst = 0.0;  // max oracle / bound over unclamped points
};

template <class Bound>
UpperStats upper_stats(const std::vector<TailSample>& v, Bound&& bound, double tol = 1e-8) {
    UpperStats s;
    for (const auto& p : v) {
        const double raw = bound(p);
        if (raw >= 1.0) ++s.clamped;
        else s.worst = std::max(s.worst, p.oracle / raw);
        if (p.oracle > std::min(raw, 1.0) + tol) ++s.violations;
    }
    return s;
}

// Max/min of ratios on a grid.
double spread_of(const std::vector<double>& r) {
    auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// criterion 1

void c_brownian_point_tail(Ctx& c, const SymbolSpec& bm) {
    auto t0 = std::chrono::steady_clock::now();
    const auto xs = linspace(0.1, 3.0, 15);
    const auto ts = linspace(0.1, 10.0, 15);
    double worst = 0.0;
    for (double t : ts) {
        auto v = laplace_point_tail(bm, xs, t);
        for (std::size_t i = 0; i < xs.size(); ++i)
            worst = std::max(worst, std::abs(v[i] - std::erf(xs[i] / (2.0 * std::sqrt(t)))));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.r.measured = {{"max_abs_error", worst}, {"grid_points", 225}, {"within_time_budget", secs <= 10.0}};
    c.r.tolerances = {{"max_abs_error", 1e-6}, {"time_budget_s", 10.0}};
    c.verdict(worst <= 1e-6 && secs <= 10.0, secs > 10.0 ? "runtime over budget" : "");
}

// ---------------------------------------------------------------------------
// criterion 2

void c_brownian_kernel(Ctx& c, const SymbolSpec& bm) {
    double worst = 0.0;
    for (double x : logspace(1e-3, 1e3, 25)) worst = std::max(worst, rel_err(K(bm, x), x / 2.0));
    c.r.measured = {{"max_rel_error", worst}};
    c.r.tolerances = {{"max_rel_error", 1e-8}};
    c.verdict(worst <= 1e-8);
}

void c_brownian_potential(Ctx& c, const SymbolSpec& bm) {
    double worst = 0.0;
    for (double l : logspace(1e-4, 1e4, 25))
        worst = std::max(worst, rel_err(potential_u_lambda(bm, 0.0, l).value, 0.5 / std::sqrt(l)));
    c.r.measured = {{"max_rel_error", worst}};
    c.r.tolerances = {{"max_rel_error", 1e-8}};
    c.verdict(worst <= 1e-8);
}

void c_stable_scaling(Ctx& c, const SymbolSpec& st) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double s = log_uniform(c.rng, 1e-2, 1e2), x = log_uniform(c.rng, 1e-2, 1e2);
        worst = std::max(worst, rel_err(K(st, s * x), std::pow(s, 0.5) * K(st, x)));
    }
    c.r.measured = {{"max_rel_error", worst}, {"pairs", 100}};
    c.r.tolerances = {{"max_rel_error", 1e-8}};
    c.verdict(worst <= 1e-8);
}

// ---------------------------------------------------------------------------
// criterion 3

void c_brownian_renewal(Ctx& c, const SymbolSpec& bm) {
    double worst = 0.0;
    for (double x : logspace(1e-2, 1e2, 41)) worst = std::max(worst, rel_err(renewal_V(bm, x), x));
    c.r.measured = {{"max_rel_error", worst}};
    c.r.tolerances = {{"max_rel_error", 1e-4}};
    c.verdict(worst <= 1e-4);
}

void c_stable_renewal_shape(Ctx& c, const SymbolSpec& st) {
    std::vector<double> q;
    for (double x : logspace(1e-2, 1e2, 41)) q.push_back(renewal_V(st, x) / std::pow(x, 0.75));
    auto [lo, hi] = std::minmax_element(q.begin(), q.end());
    const double mean = std::accumulate(q.begin(), q.end(), 0.0) / q.size();
    const double variation = (*hi - *lo) / mean;
    const double expected = stable_renewal_constant(1.5);
    const double norm_err = rel_err(mean, expected);
    c.r.measured = {{"relative_variation", variation}, {"mean_ratio", mean}, {"normalization_rel_error", norm_err}};
    c.r.tolerances = {{"relative_variation", 1e-3}, {"normalization_rel_error", 1e-3},
                      {"expected_constant", expected}};
    c.verdict(variation <= 1e-3 && norm_err <= 1e-3);
}

// ---------------------------------------------------------------------------
// criterion 4 (explicit constants)

const double kLaplaceToTail = std::numbers::e / (std::numbers::e - 1.0);  // tail <= e/(e-1) * lambda L(lambda) at lambda = 1/t

void upper_check(Ctx& c, const SymbolSpec& bm, const SymbolSpec& st, double C, double chain_C,
                 const std::function<double(const SymbolSpec&, const TailSample&)>& expr, const char* chain_text) {
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        const auto& v = tail_samples(c, *s);
        auto u = upper_stats(v, [&](const TailSample& p) { return C * expr(*s, p); });
        m[s->name()] = {{"violations", u.violations}, {"worst_ratio", u.worst}, {"clamped", u.clamped},
                        {"points", v.size()}};
        ok = ok && u.violations == 0;
    }
    m["constant"] = C;
    m["derived_constant"] = chain_C;
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"inversion_noise", 1e-8}};
    std::string msg;
    if (C < chain_C * (1.0 - 1e-12)) {
        ok = false;
        msg = std::string("constant ") + fmt(C) + " is below " + fmt(chain_C) + " (" + chain_text + ")";
    }
    c.verdict(ok, msg);
}

void c_tilde_upper(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    upper_check(c, bm, SymbolSpec::stable(1.5), pc.tail_upper_tilde, kLaplaceToTail / pc.potential_lower_tilde,
                [](const SymbolSpec&, const TailSample& p) { return p.Kx / p.Kt; },
                "e/(e-1) times the inverse of the K~ potential lower constant");
}

void c_explicit_upper(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    upper_check(c, bm, SymbolSpec::stable(1.5), pc.tail_upper_explicit,
                kLaplaceToTail / pc.potential_lower_explicit,
                [](const SymbolSpec&, const TailSample& p) { return p.Kx / (p.t * p.s); },
                "e/(e-1) times the inverse of the explicit potential lower constant");
}

void c_comparable_upper(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    auto st = SymbolSpec::stable(1.5);
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        auto cert = certify_comparability(*s);
        const double a = std::min(cert.a, cert.a_refined);
        const auto& v = tail_samples(c, *s);
        auto u = upper_stats(v, [&](const TailSample& p) { return pc.tail_upper_tilde / a * p.Kx / p.Kr; });
        m[s->name()] = {{"a", a}, {"violations", u.violations}, {"worst_ratio", u.worst}};
        ok = ok && cert.passing && u.violations == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}};
    c.verdict(ok);
}

void c_optimal_upper(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    auto st = SymbolSpec::stable(1.5);
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        const auto& v = tail_samples(c, *s);
        int viol = 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < v.size(); i += 5) {  // 200 points: each needs a root solve
            auto o = point_tail_optimal_R(*s, v[i].x, v[i].t, pc);
            worst = std::max(worst, v[i].oracle / o.bound);
            if (v[i].oracle > o.bound + 1e-8) ++viol;
        }
        m[s->name()] = {{"violations", viol}, {"worst_ratio", worst}};
        ok = ok && viol == 0;
    }
    // the constant comes from the exit-time (4) and escape (4) bounds: 4 + 4
    const double chain = pc.exit_time + pc.escape_upper;
    m["constant"] = pc.tail_upper_optimal;
    m["derived_constant"] = chain;
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}};
    std::string msg;
    if (pc.tail_upper_optimal < chain * (1.0 - 1e-12)) {
        ok = false;
        msg = "constant below the exit-time plus escape constants";
    }
    c.verdict(ok, msg);
}

struct PotentialSample {
    double lambda, u0, s, Kr, Kt;
};

std::vector<PotentialSample> potential_samples(Ctx& c, const SymbolSpec& s) {
    std::vector<PotentialSample> v(1000);
    for (auto& p : v) p.lambda = log_uniform(c.rng, 1e-6, 1e6);
    parallel_for(v.size(), [&](std::size_t i) {
        auto& p = v[i];
        p.u0 = potential_u_lambda(s, 0.0, p.lambda).value;
        p.s = s.psi_inverse(p.lambda);
        p.Kr = K(s, 1.0 / p.s);
        p.Kt = Ktilde(s, 1.0 / p.s);
    });
    return v;
}

constexpr double kRelNoise = 1e-9;

void c_potential_lower_tilde(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    auto st = SymbolSpec::stable(1.5);
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        int viol = 0;
        double worst1 = 0.0, worst2 = 0.0;
        for (const auto& p : potential_samples(c, *s)) {
            const double b1 = pc.potential_lower_tilde * p.Kt;
            const double b2 = pc.potential_lower_explicit * p.s / p.lambda;
            worst1 = std::max(worst1, b1 / p.u0);
            worst2 = std::max(worst2, b2 / b1);
            if (b1 > p.u0 * (1 + kRelNoise) || b2 > b1 * (1 + kRelNoise)) ++viol;
        }
        m[s->name()] = {{"violations", viol}, {"max_bound_over_u0", worst1}, {"max_explicit_over_tilde", worst2}};
        ok = ok && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"relative_noise", kRelNoise}};
    c.verdict(ok);
}

void c_potential_two_sided(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    auto st = SymbolSpec::stable(1.5);
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        auto cert = certify_comparability(*s);
        const double a = std::min(cert.a, cert.a_refined);
        int viol = 0;
        double lo_worst = 0.0, hi_worst = 0.0;
        for (const auto& p : potential_samples(c, *s)) {
            const double lo = pc.potential_lower_a * a * p.Kr;
            const double hi = pc.potential_upper_a / a * p.Kr;
            lo_worst = std::max(lo_worst, lo / p.u0);
            hi_worst = std::max(hi_worst, p.u0 / hi);
            if (lo > p.u0 * (1 + kRelNoise) || p.u0 > hi * (1 + kRelNoise)) ++viol;
        }
        m[s->name()] = {{"a", a}, {"violations", viol}, {"max_lower_over_u0", lo_worst}, {"max_u0_over_upper", hi_worst}};
        ok = ok && cert.passing && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"relative_noise", kRelNoise}};
    c.verdict(ok);
}

void c_k_lambda_lower(Ctx& c, const SymbolSpec& bm) {
    const auto& pc = c.opt.constants;
    auto st = SymbolSpec::stable(1.5);
    Json m = Json::object();
    bool ok = true;
    for (const SymbolSpec* s : std::array<const SymbolSpec*, 2>{&bm, &st}) {
        auto cert = certify_comparability(*s);
        const double a = std::min(cert.a, cert.a_refined);
        struct P { double l, x, kl, k; };
        std::vector<P> v(1000);
        for (auto& p : v) {
            p.l = log_uniform(c.rng, 1e-6, 1e6);
            std::uniform_real_distribution<double> u(1e-3, 1.0);
            p.x = u(c.rng) / s->psi_inverse(p.l);  // x psi^{-1}(lambda) <= 1
        }
        parallel_for(v.size(), [&](std::size_t i) {
            v[i].kl = kernel_K_lambda(*s, v[i].x, v[i].l).value;
            v[i].k = K(*s, v[i].x);
        });
        int viol = 0;
        double worst = 0.0;
        for (const auto& p : v) {
            const double b = pc.k_lambda_lower * a * p.k;
            worst = std::max(worst, b / p.kl);
            if (b > p.kl * (1 + kRelNoise)) ++viol;
        }
        m[s->name()] = {{"a", a}, {"violations", viol}, {"max_bound_over_K_lambda", worst}};
        ok = ok && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"relative_noise", kRelNoise}};
    c.verdict(ok);
}

void c_escape_ruin(Ctx& c, const SymbolSpec& bm) {
    int viol = 0, n = 0;
    double min_margin = INFINITY;
    for (double R : {0.5, 1.0, 3.0}) {
        for (double f : linspace(0.02, 0.98, 25)) {
            const double x = f * R;
            auto b = exit_escape_bounds(bm, x, R, c.opt.constants).escape;
            const double p = x / R;  // brownian ruin probability
            ++n;
            if (!(b.lower <= p * (1 + kRelNoise) && p <= b.upper * (1 + kRelNoise))) ++viol;
            min_margin = std::min({min_margin, p / b.lower, b.upper / p});
        }
    }
    c.r.measured = {{"violations", viol}, {"points", n}, {"min_margin_ratio", min_margin}};
    c.r.tolerances = {{"violations", 0}};
    c.verdict(viol == 0);
}

void c_exit_time(Ctx& c, const SymbolSpec& bm) {
    McConfig mc;
    mc.n_paths = c.paths(20000);
    mc.h = 1e-4;
    mc.seed = c.opt.seed;
    Json m = Json::object();
    bool ok = true;
    const double R = 1.0;
    for (double x : {0.2, 0.5, 0.8}) {
        auto e = simulate_exit_time(bm, x, R, mc);
        const double bound = c.opt.constants.exit_time * R * K(bm, x);
        m[fmt(x)] = {{"mc_mean", e.estimate}, {"std_error", e.std_error}, {"bound", bound},
                     {"exact_mean", x * (R - x) / 2.0}};
        ok = ok && e.estimate <= bound + 3.0 * e.std_error;
    }
    c.r.measured = m;
    c.r.tolerances = {{"std_errors", 3}, {"paths", mc.n_paths}, {"step", mc.h}};
    c.verdict(ok);
}

// ---------------------------------------------------------------------------
// criterion 5

std::vector<double> point_ratio_grid(const SymbolSpec& s, const std::vector<double>& xs, const std::vector<double>& ts,
                                     const std::function<double(double, double)>& central) {
    std::vector<double> r(xs.size() * ts.size());
    parallel_for(ts.size(), [&](std::size_t it) {
        auto v = laplace_point_tail(s, xs, ts[it]);
        for (std::size_t ix = 0; ix < xs.size(); ++ix) r[it * xs.size() + ix] = v[ix] / central(xs[ix], ts[it]);
    });
    return r;
}

// Spread of oracle / central on an n x n log grid and on the 2x refined grid.
Json refinement_spread(const SymbolSpec& s, double x0, double x1, double t0, double t1, int n,
                       const std::function<double(double, double)>& central, double tol, bool& ok) {
    auto base = point_ratio_grid(s, logspace(x0, x1, n), logspace(t0, t1, n), central);
    auto fine = point_ratio_grid(s, logspace(x0, x1, 2 * n - 1), logspace(t0, t1, 2 * n - 1), central);
    const double sb = spread_of(base), sf = spread_of(fine);
    const double change = std::abs(sf / sb - 1.0);
    ok = ok && std::isfinite(sb) && std::isfinite(sf) && change < tol;
    auto [lo, hi] = std::minmax_element(fine.begin(), fine.end());
    return {{"spread", sb}, {"spread_refined", sf}, {"relative_change", change}, {"min_ratio", *lo},
            {"max_ratio", *hi}, {"grid", n}, {"grid_refined", 2 * n - 1}};
}

void c_point_comparability(Ctx& c, const SymbolSpec& st) {
    bool ok = true;
    auto kform = [&](double x, double t) { return std::min(K(st, x) / K(st, 1.0 / st.psi_inverse(1.0 / t)), 1.0); };
    auto wform = [&](double x, double t) {
        return std::min(1.0 / (t * st.psi_inverse(1.0 / t) * x * st.psi(1.0 / x)), 1.0);
    };
    c.r.measured = {{"kernel_form", refinement_spread(st, 0.1, 10, 0.1, 100, 9, kform, 0.10, ok)},
                    {"scaling_form", refinement_spread(st, 0.1, 10, 0.1, 100, 9, wform, 0.10, ok)}};
    c.r.tolerances = {{"relative_change", 0.10}};
    c.verdict(ok);
}

// ---------------------------------------------------------------------------
// criterion 6

void c_stable_asymptotic(Ctx& c, const SymbolSpec& st) {
    const double t = 1e4, alpha = 1.5;
    const double f = asymptotic_factor(alpha);
    Json m = Json::object();
    bool ok = true;
    for (double x : {0.5, 1.0, 2.0}) {
        const double lhs = std::pow(t, 1.0 - 1.0 / alpha) * laplace_point_tail(st, x, t);
        const double rhs = f * K(st, x);
        const double via_api = tail_asymptotic(st, x).constant;
        const double e = rel_err(lhs, rhs);
        m[fmt(x)] = {{"scaled_tail", lhs}, {"limit", rhs}, {"tail_asymptotic", via_api}, {"rel_error", e}};
        ok = ok && e <= 0.02 && rel_err(via_api, rhs) <= 1e-12;
    }
    m["factor"] = f;
    c.r.measured = m;
    c.r.tolerances = {{"rel_error", 0.02}, {"t", t}};
    c.verdict(ok);
}

void c_brownian_asymptotic(Ctx& c, const SymbolSpec& bm) {
    const double t = 1e4;
    Json m = Json::object();
    bool ok = true;
    for (double x : {0.5, 1.0, 2.0}) {
        const double lhs = std::sqrt(t) * laplace_point_tail(bm, x, t);
        const double rhs = x / std::sqrt(kPi);
        const double e = rel_err(lhs, rhs);
        m[fmt(x)] = {{"scaled_tail", lhs}, {"limit", rhs}, {"rel_error", e},
                     {"tail_asymptotic", tail_asymptotic(bm, x).constant}};
        ok = ok && e <= 0.01;
    }
    c.r.measured = m;
    c.r.tolerances = {{"rel_error", 0.01}, {"t", t}};
    c.verdict(ok);
}

// ---------------------------------------------------------------------------
// criterion 7

const std::vector<double> kIntX = {1.5, 2.0, 4.0};
const std::vector<double> kIntT = {0.5, 2.0, 10.0};

void c_interval_stable(Ctx& c, const SymbolSpec& st) {
    auto t0 = std::chrono::steady_clock::now();
    const double R = 1.0;
    McConfig cal_mc;
    cal_mc.n_paths = c.paths(10000);
    cal_mc.h = 1e-3;
    cal_mc.seed = c.opt.seed + 1;  // calibration and test use disjoint streams
    auto cal = calibrate_interval_band(st, R, cal_mc);
    McConfig mc;
    mc.n_paths = c.paths(100000);
    mc.h = 1e-3;
    mc.seed = c.opt.seed;
    auto grid = simulate_hitting_grid(st, kIntX, R, kIntT, mc);
    Json pts = Json::array();
    bool ok = true;
    for (std::size_t ix = 0; ix < kIntX.size(); ++ix) {
        for (std::size_t it = 0; it < kIntT.size(); ++it) {
            const auto& run = grid.at(ix, it);
            auto band = interval_tail_band(st, kIntX[ix], R, kIntT[it], &cal);
            const double slack = 3.0 * run.fine.std_error + run.bias_bar;
            const bool in = run.fine.estimate + slack >= band.lower && run.fine.estimate - slack <= band.upper;
            ok = ok && in;
            pts.push_back({{"x", kIntX[ix]}, {"t", kIntT[it]}, {"estimate", run.fine.estimate},
                           {"std_error", run.fine.std_error}, {"bias_bar", run.bias_bar}, {"lower", band.lower},
                           {"upper", band.upper}, {"regime", to_string(band.regime)}, {"inside", in}});
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() +
                        c.shared.interval_seconds;
    c.shared.interval_seconds = secs;
    c.r.measured = {{"points", pts},
                    {"calibration", {{"short_lower", cal.short_lower}, {"short_upper", cal.short_upper},
                                     {"long_lower", cal.long_lower}, {"long_upper", cal.long_upper},
                                     {"paths", cal_mc.n_paths}}},
                    {"within_time_budget", secs <= 300.0}};
    c.r.tolerances = {{"std_errors", 3}, {"paths", mc.n_paths}, {"step", mc.h}, {"time_budget_s", 300.0}};
    c.verdict(ok && secs <= 300.0, secs > 300.0 ? "runtime over budget" : "");
}

void c_interval_brownian(Ctx& c, const SymbolSpec& bm) {
    auto t0 = std::chrono::steady_clock::now();
    McConfig mc;
    mc.n_paths = c.paths(100000);
    mc.h = 1e-3;
    mc.seed = c.opt.seed;
    const double R = 1.0;
    auto grid = simulate_hitting_grid(bm, kIntX, R, kIntT, mc);
    Json pts = Json::array();
    bool ok = true;
    for (std::size_t ix = 0; ix < kIntX.size(); ++ix) {
        for (std::size_t it = 0; it < kIntT.size(); ++it) {
            const auto& run = grid.at(ix, it);
            const double exact = std::erf((kIntX[ix] - R) / (2.0 * std::sqrt(kIntT[it])));
            const double slack = 3.0 * run.fine.std_error + run.bias_bar;
            const bool in = std::abs(run.fine.estimate - exact) <= slack;
            ok = ok && in;
            pts.push_back({{"x", kIntX[ix]}, {"t", kIntT[it]}, {"estimate", run.fine.estimate}, {"exact", exact},
                           {"std_error", run.fine.std_error}, {"bias_bar", run.bias_bar}, {"inside", in}});
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() +
                        c.shared.interval_seconds;
    c.shared.interval_seconds = secs;
    c.r.measured = {{"points", pts}, {"within_time_budget", secs <= 300.0}};
    c.r.tolerances = {{"std_errors", 3}, {"paths", mc.n_paths}, {"step", mc.h}, {"time_budget_s", 300.0}};
    c.verdict(ok && secs <= 300.0, secs > 300.0 ? "interval checks together over the time budget" : "");
}

// ---------------------------------------------------------------------------
// criterion 8

void c_hk_spread(Ctx& c, const SymbolSpec&) {
    const long n = c.paths(50000);
    const auto& a = hk_run(c, n);
    const auto& b = hk_run(c, 2 * n);
    const double change = std::abs(b.spread / a.spread - 1.0);
    // separated pairs (|x - y| >= 4r) must stay inside the spread of the whole grid
    bool far_inside = true;
    for (const auto& e : b.entries)
        if (std::abs(e.x - e.y) >= 4.0 && !(e.ratio >= b.min && e.ratio <= b.max)) far_inside = false;
    c.r.measured = {{"spread", a.spread}, {"spread_doubled", b.spread}, {"relative_change", change},
                    {"min", b.min}, {"max", b.max}, {"paths", n}, {"paths_doubled", 2 * n}};
    c.r.tolerances = {{"relative_change", 0.20}};
    c.verdict(std::isfinite(a.spread) && std::isfinite(b.spread) && change < 0.20 && far_inside);
}

void c_hk_domination(Ctx& c, const SymbolSpec&) {
    const auto& b = hk_run(c, 2 * c.paths(50000));
    int viol = 0;
    double worst = 0.0;
    for (const auto& e : b.entries) {
        worst = std::max(worst, (e.killed - 3.0 * e.killed_se) / e.free);
        if (e.killed - 3.0 * e.killed_se > e.free) ++viol;
    }
    c.r.measured = {{"violations", viol}, {"max_lower_killed_over_free", worst}, {"points", b.entries.size()}};
    c.r.tolerances = {{"std_errors", 3}};
    c.verdict(viol == 0);
}

void c_hk_symmetry(Ctx& c, const SymbolSpec&) {
    const auto& b = hk_run(c, 2 * c.paths(50000));
    int pairs = 0, viol = 0;
    double worst = 0.0;
    for (const auto& e : b.entries) {
        for (const auto& f : b.entries) {
            if (f.t != e.t || f.x != e.y || f.y != e.x || !(e.x < e.y)) continue;
            ++pairs;
            const double se = std::hypot(e.killed_se, f.killed_se);
            worst = std::max(worst, std::abs(e.killed - f.killed) / se);
            if (std::abs(e.killed - f.killed) > 3.0 * se) ++viol;
        }
    }
    c.r.measured = {{"pairs", pairs}, {"violations", viol}, {"max_diff_in_std_errors", worst}};
    c.r.tolerances = {{"std_errors", 3}};
    c.verdict(pairs > 0 && viol == 0);
}

// ---------------------------------------------------------------------------
// criterion 9 (structural suites, 10^4 instances each)

constexpr int kInstances = 10000;
const char* kStructSpecs[] = {"stable15", "cauchy_plus_bm", "two_stable"};

SymbolSpec struct_spec(const std::string& n) {
    if (n == "stable15") return SymbolSpec::stable(1.5);
    if (n == "cauchy_plus_bm") return SymbolSpec::cauchy_plus_bm();
    if (n == "two_stable") return SymbolSpec::two_stable(1.2, 1.8);
    if (n == "atomic15") return SymbolSpec::atomic_stablelike(1.5);
    if (n == "log_perturbed") return SymbolSpec::log_perturbed();
    return SymbolSpec::brownian();
}

void c_k_subadditive(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : kStructSpecs) {
        auto s = struct_spec(name);
        std::vector<std::array<double, 2>> p(kInstances);
        for (auto& q : p) q = {log_uniform(c.rng, 1e-3, 1e3), log_uniform(c.rng, 1e-3, 1e3)};
        std::vector<int> bad(p.size());
        std::vector<double> excess(p.size());
        parallel_for(p.size(), [&](std::size_t i) {
            auto a = kernel_K(s, p[i][0]), b = kernel_K(s, p[i][1]), ab = kernel_K(s, p[i][0] + p[i][1]);
            const double tol = 2.0 * (a.achieved_tol + b.achieved_tol + ab.achieved_tol) + 1e-12 * (a.value + b.value);
            excess[i] = (ab.value - a.value - b.value) / (a.value + b.value);
            bad[i] = ab.value > a.value + b.value + tol;
        });
        const int viol = std::accumulate(bad.begin(), bad.end(), 0);
        m[name] = {{"violations", viol}, {"max_relative_excess", *std::max_element(excess.begin(), excess.end())}};
        ok = ok && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"instances", kInstances}, {"noise", "2 x reported quadrature error"}};
    c.verdict(ok);
}

void c_v_subadditive(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : {"brownian", "stable15", "cauchy_plus_bm"}) {
        auto s = struct_spec(name);
        const auto& prof = cached_profile(s);
        int viol = 0;
        double worst = -INFINITY;
        for (int i = 0; i < kInstances; ++i) {
            const double x = log_uniform(c.rng, 1e-3, 1e3), y = log_uniform(c.rng, 1e-3, 1e3);
            const double a = prof.V(x), b = prof.V(y), ab = prof.V(x + y);
            worst = std::max(worst, (ab - a - b) / (a + b));
            if (ab > (a + b) * (1.0 + 1e-8)) ++viol;
        }
        m[name] = {{"violations", viol}, {"max_relative_excess", worst}};
        ok = ok && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"instances", kInstances}, {"relative_noise", 1e-8}};
    c.verdict(ok);
}

void c_green_bounds(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : {"stable15", "cauchy_plus_bm"}) {
        auto s = struct_spec(name);
        std::vector<std::array<double, 2>> p(kInstances);
        for (auto& q : p) {
            std::bernoulli_distribution sign(0.5);
            q = {log_uniform(c.rng, 1e-2, 1e2) * (sign(c.rng) ? 1 : -1),
                 log_uniform(c.rng, 1e-2, 1e2) * (sign(c.rng) ? 1 : -1)};
        }
        std::vector<int> bound_bad(p.size()), sym_bad(p.size());
        std::vector<double> ratio(p.size());
        parallel_for(p.size(), [&](std::size_t i) {
            auto g = green_point_complement(s, p[i][0], p[i][1]);
            auto h = green_point_complement(s, p[i][1], p[i][0]);
            auto kx = kernel_K(s, p[i][0]), ky = kernel_K(s, p[i][1]);
            const double tol = 4.0 * (g.achieved_tol + kx.achieved_tol + ky.achieved_tol) + 1e-12;
            const double bound = 2.0 * std::min(kx.value, ky.value);
            ratio[i] = g.value / bound;
            bound_bad[i] = g.value > bound + tol || g.value < -tol;
            sym_bad[i] = std::abs(g.value - h.value) > tol;
        });
        const int vb = std::accumulate(bound_bad.begin(), bound_bad.end(), 0);
        const int vs = std::accumulate(sym_bad.begin(), sym_bad.end(), 0);
        m[name] = {{"bound_violations", vb}, {"symmetry_violations", vs},
                   {"max_ratio_to_bound", *std::max_element(ratio.begin(), ratio.end())}};
        ok = ok && vb == 0 && vs == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"instances", kInstances}};
    c.verdict(ok);
}

void c_halfline_sandwich(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : {"stable15", "cauchy_plus_bm"}) {
        auto s = struct_spec(name);
        const auto& prof = cached_profile(s);
        std::vector<std::array<double, 2>> p(kInstances);
        for (auto& q : p) {
            const double a = log_uniform(c.rng, 1e-2, 1e2), b = log_uniform(c.rng, 1e-2, 1e2);
            q = {std::min(a, b), std::max(a, b)};
        }
        std::vector<int> bad(p.size());
        std::vector<double> lo_r(p.size()), hi_r(p.size());
        parallel_for(p.size(), [&](std::size_t i) {
            const double x = p[i][0], z = p[i][1];
            const double mass = green_halfline_mass(prof, x, z);
            const double lo = prof.V(z - x) * prof.V(x), hi = prof.V(x) * prof.V(z);
            lo_r[i] = lo / mass;
            hi_r[i] = mass / hi;
            bad[i] = lo > mass * (1 + 1e-7) || mass > hi * (1 + 1e-7);
        });
        const int viol = std::accumulate(bad.begin(), bad.end(), 0);
        m[name] = {{"violations", viol}, {"max_lower_over_mass", *std::max_element(lo_r.begin(), lo_r.end())},
                   {"max_mass_over_upper", *std::max_element(hi_r.begin(), hi_r.end())}};
        ok = ok && viol == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"instances", kInstances}, {"relative_noise", 1e-7}};
    c.verdict(ok);
}

void c_psi_star(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : {"atomic15", "cauchy_plus_bm", "log_perturbed", "two_stable"}) {
        auto s = struct_spec(name);
        // psi* is a running max of the tabulated symbol, so it may sit below the exact psi by
        // the interpolation error (about 1e-9; measured peak 1.8e-5 for the atomic measure)
        const double tol = s.family() == Family::atomic_stablelike ? 5e-5 : 1e-8;
        int mono = 0, dom = 0;
        double shortfall = 0.0;
        for (int i = 0; i < kInstances; ++i) {
            const double a = log_uniform(c.rng, 1e-4, 1e4), b = log_uniform(c.rng, 1e-4, 1e4);
            const double lo = std::min(a, b), hi = std::max(a, b);
            const double sl = s.psi_star(lo), sh = s.psi_star(hi);
            if (sl > sh * (1 + 1e-12)) ++mono;
            const double p = s.psi(lo);
            shortfall = std::max(shortfall, p / sl - 1.0);
            if (p > sl * (1 + tol)) ++dom;
        }
        m[name] = {{"monotonicity_violations", mono}, {"domination_violations", dom},
                   {"max_relative_shortfall", shortfall}, {"domination_tolerance", tol}};
        ok = ok && mono == 0 && dom == 0;
    }
    c.r.measured = m;
    c.r.tolerances = {{"violations", 0}, {"instances", kInstances}};
    c.verdict(ok);
}

void c_inverse(Ctx& c, const SymbolSpec&) {
    Json m = Json::object();
    bool ok = true;
    for (const char* name : {"atomic15", "cauchy_plus_bm", "log_perturbed", "stable15"}) {
        auto s = struct_spec(name);
        int v1 = 0, v2 = 0, v3 = 0;
        double worst = 0.0;
        for (int i = 0; i < kInstances; ++i) {
            const double u = log_uniform(c.rng, 1e-6, 1e6), w = log_uniform(c.rng, 1e-6, 1e6);
            const double xi = s.psi_inverse(u);
            const double e = rel_err(s.psi_star(xi), u);  // psi* is continuous: psi*(psi^{-1}(u)) = u
            worst = std::max(worst, e);
            if (e > 1e-10) ++v1;
            const double xs = log_uniform(c.rng, 1e-4, 1e4);
            if (s.psi_inverse(s.psi_star(xs)) > xs * (1 + 1e-12)) ++v2;  // psi^{-1}(psi*(s)) <= s
            if (u < w && xi > s.psi_inverse(w)) ++v3;  // nondecreasing
        }
        const bool zero = s.psi_inverse(0.0) == 0.0;
        m[name] = {{"round_trip_violations", v1}, {"max_round_trip_rel_error", worst}, {"left_inverse_violations", v2},
                   {"monotonicity_violations", v3}, {"inverse_of_zero_is_zero", zero}};
        ok = ok && v1 == 0 && v2 == 0 && v3 == 0 && zero;
    }
    c.r.measured = m;
    c.r.tolerances = {{"round_trip_rel_error", 1e-10}, {"instances", kInstances}};
    c.verdict(ok);
}

void c_property_h(Ctx& c, const SymbolSpec& bm) {
    auto rep = check_property_H(cached_profile(bm), {0.01, 0.1, 1.0, 10.0}, kInstances / 4, c.opt.seed);
    const double e = std::max(std::abs(rep.h - 1.0), std::abs(rep.h_refined - 1.0));
    c.r.measured = {{"H", rep.h}, {"H_refined", rep.h_refined}, {"pairs", rep.pairs}};
    c.r.tolerances = {{"abs_error", 1e-6}};
    c.verdict(e <= 1e-6 && rep.passing);
}

// ---------------------------------------------------------------------------
// criterion 10 (examples)

void c_example_cbm(Ctx& c, const SymbolSpec& s) {
    bool ok = true;
    auto form = [](double x, double t) { return std::min(std::log1p(x) / std::log1p(std::sqrt(t)), 1.0); };
    Json oracle = refinement_spread(s, 0.1, 10, 0.1, 100, 9, form, 0.10, ok);
    // the toolkit's central expression against the example's closed form
    std::vector<double> r;
    for (double x : logspace(0.1, 10, 9))
        for (double t : logspace(0.1, 100, 9))
            r.push_back(std::min(K(s, x) / K(s, 1.0 / s.psi_inverse(1.0 / t)), 1.0) / form(x, t));
    const double sp = spread_of(r);
    ok = ok && std::isfinite(sp);
    c.r.measured = {{"oracle_over_example", oracle}, {"central_over_example_spread", sp}};
    c.r.tolerances = {{"relative_change", 0.10}};
    c.verdict(ok);
}

void c_example_singular(Ctx& c, const SymbolSpec& s) {
    bool ok = true;
    const double a = 1.5;
    auto form = [&](double x, double t) {
        return std::min(std::max(std::pow(x, a - 1.0), x) / std::max(std::pow(t, 1.0 - 1.0 / a), std::sqrt(t)), 1.0);
    };
    // the oracle is slow for this measure (oscillating symbol): 3 x 3 grid refined to 5 x 5
    Json oracle = refinement_spread(s, 0.1, 10, 0.1, 100, 3, form, 0.10, ok);
    c.r.measured = {{"oracle_over_example", oracle}};
    c.r.tolerances = {{"relative_change", 0.10}};
    c.verdict(ok);
}

void c_example_slow_decay(Ctx& c, const SymbolSpec& s) {
    const double x = 1.0;
    const double kx = K(s, x);
    const double cst = std::pow(kPi * std::log(2.0), 2);
    auto ratios = [&](int n, std::vector<double>& closed, std::vector<double>& toolkit) {
        for (double t : logspace(1e2, 1e12, n)) {
            const double o = laplace_point_tail(s, x, t);
            closed.push_back(o / (cst * kx / std::log(std::log(t))));
            toolkit.push_back(o * asymptotic_normalizer(s, t, 1.0) / kx);
        }
    };
    std::vector<double> pb, tb, pf, tf;
    ratios(6, pb, tb);
    ratios(11, pf, tf);
    const double change = std::abs(spread_of(pf) / spread_of(pb) - 1.0);
    const double last = tf.back();
    c.r.measured = {{"closed_form_ratio", pf}, {"normalizer_form_ratio", tf}, {"spread", spread_of(pb)},
                    {"spread_refined", spread_of(pf)}, {"relative_change", change},
                    {"normalizer_ratio_at_largest_t", last}};
    c.r.tolerances = {{"relative_change", 0.10}, {"normalizer_ratio_abs_error", 0.05}};
    c.verdict(std::isfinite(spread_of(pf)) && change < 0.10 && std::abs(last - 1.0) <= 0.05);
}

// ---------------------------------------------------------------------------
// generic per-spec checks

void g_symbol(Ctx& c, const SymbolSpec& s) {
    int bad = 0;
    double worst_inv = 0.0;
    for (double xi : logspace(1e-4, 1e4, 41)) {
        const double p = s.psi(xi), ps = s.psi_star(xi);
        if (!(p >= 0.0) || ps < p * (1 - 1e-9)) ++bad;
        const double u = ps;
        worst_inv = std::max(worst_inv, rel_err(s.psi_star(s.psi_inverse(u)), u));
    }
    const bool zero = s.psi(0.0) == 0.0 && s.psi_inverse(0.0) == 0.0;
    c.r.measured = {{"violations", bad}, {"max_inverse_rel_error", worst_inv}, {"zero_at_zero", zero}};
    c.r.tolerances = {{"inverse_rel_error", 1e-10}};
    c.verdict(bad == 0 && worst_inv <= 1e-10 && zero);
}

void g_kernel(Ctx& c, const SymbolSpec& s) {
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const double x = log_uniform(c.rng, 1e-2, 1e2), y = log_uniform(c.rng, 1e-2, 1e2);
        auto a = kernel_K(s, x), b = kernel_K(s, y), ab = kernel_K(s, x + y);
        if (a.value < 0 || ab.value > a.value + b.value + 2 * (a.achieved_tol + b.achieved_tol + ab.achieved_tol)) ++bad;
        auto g = green_point_complement(s, x, -y), h = green_point_complement(s, -y, x);
        if (std::abs(g.value - h.value) > 4 * (g.achieved_tol + h.achieved_tol) + 1e-12) ++bad;
    }
    const double k0 = K(s, 0.0);
    c.r.measured = {{"violations", bad}, {"K_at_zero", k0}};
    c.r.tolerances = {{"violations", 0}};
    c.verdict(bad == 0 && k0 == 0.0);
}

void require_point_regular(Ctx& c, const SymbolSpec& s) {
    if (check_point_regularity(s).status != Regularity::regular)
        throw HypothesisError("points are not known to be regular", "point regularity");
    (void)c;
}

void g_point_tail(Ctx& c, const SymbolSpec& s) {
    require_point_regular(c, s);
    const std::vector<double> xs = {0.0, 0.5, 2.0};
    const std::vector<double> ts = {0.1, 1.0, 10.0};
    int bad = 0;
    std::vector<double> prev;
    for (double t : ts) {
        auto v = laplace_point_tail(s, xs, t);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] >= 0.0 && v[i] <= 1.0)) ++bad;
            if (!prev.empty() && v[i] > prev[i] + 1e-8) ++bad;
        }
        if (v[0] != 0.0) ++bad;
        prev = v;
    }
    c.r.measured = {{"violations", bad}};
    c.r.tolerances = {{"monotonicity_noise", 1e-8}};
    c.verdict(bad == 0);
}

void g_point_upper(Ctx& c, const SymbolSpec& s) {
    require_point_regular(c, s);
    const auto& pc = c.opt.constants;
    int bad = 0;
    double worst = 0.0;
    for (double t : {0.05, 1.0, 20.0}) {
        const std::vector<double> xs = {0.1, 1.0, 10.0};
        auto v = laplace_point_tail(s, xs, t);
        const double si = s.psi_inverse(1.0 / t), kt = Ktilde(s, 1.0 / si);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double kx = K(s, xs[i]);
            const double b = std::min({pc.tail_upper_tilde * kx / kt, pc.tail_upper_explicit * kx / (t * si), 1.0});
            worst = std::max(worst, v[i] / b);
            if (v[i] > b + 1e-8) ++bad;
        }
    }
    const bool chain = pc.tail_upper_tilde >= kLaplaceToTail / pc.potential_lower_tilde * (1 - 1e-12) &&
                       pc.tail_upper_explicit >= kLaplaceToTail / pc.potential_lower_explicit * (1 - 1e-12);
    c.r.measured = {{"violations", bad}, {"worst_ratio", worst}, {"constants_consistent", chain}};
    c.r.tolerances = {{"violations", 0}};
    c.verdict(bad == 0 && chain, chain ? "" : "explicit constants below their derivation values");
}

void g_point_band(Ctx& c, const SymbolSpec& s) {
    require_point_regular(c, s);
    PointModeConfig mode;
    if (wlsc_above_one(s).passing) mode.mode = PointMode::wlsc;
    else if (s.is_unimodal() == Tri::yes) mode.mode = PointMode::unimodal;
    Json pts = Json::array();
    bool ok = true;
    // disjoint from the calibration grid
    for (double t : {0.5, 50.0}) {
        const std::vector<double> xs = {0.3, 3.0};
        auto v = laplace_point_tail(s, xs, t);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto b = point_tail_band(s, xs[i], t, mode, c.opt.constants);
            const bool in = v[i] >= b.lower - 1e-8 && v[i] <= b.upper + 1e-8;
            ok = ok && in;
            pts.push_back({{"x", xs[i]}, {"t", t}, {"oracle", v[i]}, {"lower", b.lower}, {"upper", b.upper}});
        }
    }
    c.r.measured = {{"mode", to_string(mode.mode)}, {"points", pts}};
    c.r.tolerances = {{"inversion_noise", 1e-8}};
    c.verdict(ok);
}

void g_renewal(Ctx& c, const SymbolSpec& s) {
    const auto& prof = cached_profile(s);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        const double x = log_uniform(c.rng, 1e-2, 1e2), y = log_uniform(c.rng, 1e-2, 1e2);
        if (prof.V(x + y) > (prof.V(x) + prof.V(y)) * (1 + 1e-8)) ++bad;
    }
    c.r.measured = {{"profile_valid", prof.valid()}, {"subadditivity_violations", bad}};
    c.r.tolerances = {{"relative_noise", 1e-8}};
    c.verdict(prof.valid() && bad == 0);
}

void g_mc_refusal(Ctx& c, const SymbolSpec& s) {
    McConfig mc;
    mc.n_paths = 100;
    bool refused = false;
    try {
        simulate_hitting(s, 1.0, 0.0, 1.0, mc);
    } catch (const ArgumentError&) {
        refused = true;
    }
    c.r.measured = {{"refused", refused}};
    c.verdict(refused);
}

void g_mc_monotone(Ctx& c, const SymbolSpec& s) {
    McConfig mc;
    mc.n_paths = c.paths(4000);
    mc.h = 1e-2;
    mc.seed = c.opt.seed;
    const std::vector<double> xs = {1.5, 3.0}, ts = {0.5, 2.0};
    auto g = simulate_hitting_grid(s, xs, 1.0, ts, mc);
    int bad = 0;
    for (std::size_t ix = 0; ix < xs.size(); ++ix)
        for (std::size_t it = 0; it < ts.size(); ++it) {
            const auto& r = g.at(ix, it).fine;
            if (it > 0 && r.estimate > g.at(ix, it - 1).fine.estimate + 1e-12) ++bad;  // same paths: exact
            if (ix > 0) {
                const auto& q = g.at(ix - 1, it).fine;
                if (r.estimate < q.estimate - 3.0 * std::hypot(r.std_error, q.std_error)) ++bad;
            }
        }
    c.r.measured = {{"violations", bad}, {"paths", mc.n_paths}};
    c.r.tolerances = {{"std_errors", 3}};
    c.verdict(bad == 0);
}

// ---------------------------------------------------------------------------
// registry

std::vector<CheckDef> registry() {
    auto bm = [] { return SymbolSpec::brownian(); };
    auto st = [] { return SymbolSpec::stable(1.5); };
    auto none = std::function<SymbolSpec()>{};
    std::vector<CheckDef> r = {
        {{"brownian_point_tail_exact", 1, "point-hitting tail from the Laplace transform identity vs erf(x/(2 sqrt t))"},
         c_brownian_point_tail, bm},
        {{"brownian_kernel_exact", 2, "K(x) = x/2 for the brownian exponent"}, c_brownian_kernel, bm},
        {{"brownian_potential_exact", 2, "u^lambda(0) = 1/(2 sqrt lambda) for the brownian exponent"},
         c_brownian_potential, bm},
        {{"stable_kernel_scaling", 2, "K(cx) = c^{alpha-1} K(x) for the 1.5-stable exponent"}, c_stable_scaling, st},
        {{"brownian_renewal_exact", 3, "renewal function V(x) = x for the brownian exponent"}, c_brownian_renewal, bm},
        {{"stable_renewal_shape", 3, "V(x) / x^{alpha/2} constant for the 1.5-stable exponent"},
         c_stable_renewal_shape, st},
        {{"point_tail_tilde_upper", 4, "P(T_0 > t) <= 7 K(x) / K~(1/psi^{-1}(1/t))"}, c_tilde_upper, bm},
        {{"point_tail_explicit_upper", 4, "P(T_0 > t) <= 51 pi^3 K(x) / (t psi^{-1}(1/t))"}, c_explicit_upper, bm},
        {{"point_tail_comparable_upper", 4, "P(T_0 > t) <= (7/a) K(x) / K(1/psi^{-1}(1/t)) when psi >= a psi*"},
         c_comparable_upper, bm},
        {{"point_tail_optimal_upper", 4, "P(T_0 > t) <= 8 K(x) / K(R_t) with R_t K(R_t) = t"}, c_optimal_upper, bm},
        {{"potential_lower_tilde", 4, "u^lambda(0) >= K~(1/psi^{-1}(lambda))/4 >= psi^{-1}(lambda)/(32 pi^3 lambda)"},
         c_potential_lower_tilde, bm},
        {{"potential_comparable_two_sided", 4, "(a/4) K(1/psi^{-1}) <= u^lambda(0) <= (3 pi^2/(2a)) K(1/psi^{-1})"},
         c_potential_two_sided, bm},
        {{"k_lambda_lower", 4, "K^lambda(x) >= (a/(10 pi^2)) K(x) for x psi^{-1}(lambda) <= 1"}, c_k_lambda_lower, bm},
        {{"escape_band_ruin", 4, "K(x)/(6K(R)) <= P(exit before T_0) <= 4K(x)/K(R) contains the ruin probability x/R"},
         c_escape_ruin, bm},
        {{"exit_time_upper", 4, "E[tau ^ T_0] <= 4 R K(x)", true}, c_exit_time, bm},
        {{"point_comparability_refinement", 5, "oracle / comparability expression has a refinement-stable spread"},
         c_point_comparability, st},
        {{"stable_asymptotic_constant", 6, "t^{1-1/alpha} P(T_0 > t) -> factor(alpha) K(x)"}, c_stable_asymptotic, st},
        {{"brownian_asymptotic_constant", 6, "sqrt(t) P(T_0 > t) -> x / sqrt(pi)"}, c_brownian_asymptotic, bm},
        {{"interval_tail_stable_band", 7, "interval tail Monte Carlo inside the calibrated two-regime band", true},
         c_interval_stable, st},
        {{"interval_tail_brownian_exact", 7, "interval tail Monte Carlo vs erf((x-R)/(2 sqrt t))", true},
         c_interval_brownian, bm},
        {{"killed_kernel_product_spread", 8, "killed density / product of survivals and free density: stable spread",
          true},
         c_hk_spread, st},
        {{"killed_kernel_free_domination", 8, "killed density <= free density", true}, c_hk_domination, st},
        {{"killed_kernel_symmetry", 8, "killed density symmetric in (x, y)", true}, c_hk_symmetry, st},
        {{"kernel_subadditivity", 9, "K(x + y) <= K(x) + K(y)"}, c_k_subadditive, st},
        {{"renewal_subadditivity", 9, "V(x + y) <= V(x) + V(y)"}, c_v_subadditive, st},
        {{"green_point_complement_bounds", 9, "0 <= G(x, y) = G(y, x) <= 2 min(K(x), K(y))"}, c_green_bounds, st},
        {{"halfline_green_sandwich", 9, "V(z-x) V(x) <= int_0^z G_(0,inf)(x, y) dy <= V(x) V(z)"},
         c_halfline_sandwich, st},
        {{"psi_star_monotone_dominates", 9, "psi* nondecreasing and psi* >= psi"}, c_psi_star, st},
        {{"generalized_inverse_identities", 9, "psi*(psi^{-1}(u)) = u, psi^{-1}(psi*(s)) <= s, psi^{-1} monotone"},
         c_inverse, st},
        {{"property_h_brownian", 9, "boundary regularity constant H = 1 for the brownian renewal function"},
         c_property_h, bm},
        {{"example_cauchy_bm_band", 10, "psi = |x| + x^2: tail tracks log(1+x)/log(1+sqrt t) ^ 1"}, c_example_cbm,
         [] { return SymbolSpec::cauchy_plus_bm(); }},
        {{"example_singular_measure_band", 10,
          "singular Levy measure: tail tracks (|x|^{a-1} v |x|)/(t^{1-1/a} v t^{1/2}) ^ 1"},
         c_example_singular, [] { return SymbolSpec::atomic_stablelike(1.5); }},
        {{"example_slow_decay_asymptotic", 10, "log-perturbed Cauchy-type: tail ~ (pi log 2)^2 K(x) / log log t"},
         c_example_slow_decay, [] { return SymbolSpec::log_perturbed(); }},
        // generic
        {{"symbol_sanity", 0, "psi >= 0, psi* >= psi, psi*(psi^{-1}(u)) = u", false, true}, g_symbol, none},
        {{"kernel_sanity", 0, "K(0) = 0, K subadditive, G symmetric", false, true}, g_kernel, none},
        {{"point_tail_sanity", 0, "oracle tail in [0, 1], nonincreasing in t, 0 at x = 0", false, true}, g_point_tail,
         none},
        {{"point_tail_upper_bounds", 0, "explicit upper bounds dominate the oracle tail", false, true}, g_point_upper,
         none},
        {{"point_band_contains_oracle", 0, "calibrated point band contains the oracle off the calibration grid", false,
          true},
         g_point_band, none},
        {{"renewal_sanity", 0, "renewal profile increasing and subadditive", false, true}, g_renewal, none},
        {{"mc_point_target_refused", 0, "skeleton simulation refuses point targets", true, true}, g_mc_refusal, none},
        {{"mc_interval_monotone", 0, "interval tail nonincreasing in t, nondecreasing in |x|", true, true},
         g_mc_monotone, none},
    };
    return r;
}

bool wanted(const CheckInfo& info, const ValidationOptions& opt) {
    if (opt.suite == Suite::quick && info.mc) return false;
    if (opt.suite == Suite::mc && !info.mc) return false;
    if (!info.per_spec && !opt.acceptance) return false;
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), info.name) == opt.only.end()) return false;
    return true;
}

}  // namespace

std::vector<CheckInfo> check_catalog() {
    std::vector<CheckInfo> out;
    for (const auto& d : registry()) out.push_back(d.info);
    return out;
}

ValidationReport run_validation(const std::vector<SymbolSpec>& specs, const ValidationOptions& opt) {
    ValidationReport rep;
    rep.suite = opt.suite;
    rep.seed = opt.seed;
    for (const auto& s : specs) rep.specs.push_back(s.name());
    Shared shared;
    auto run_one = [&](const CheckDef& d, const SymbolSpec& spec, const std::string& spec_name) {
        CheckResult r;
        r.name = d.info.name;
        r.criterion = d.info.criterion;
        r.anchor = d.info.anchor;
        r.mc = d.info.mc;
        r.spec = spec_name;
        Ctx c{opt, shared, r, Rng(opt.seed ^ fnv1a(d.info.name + "/" + spec_name))};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            d.fn(c, spec);
        } catch (const HypothesisError& e) {
            if (d.info.per_spec) {
                r.status = CheckStatus::skip;
                r.message = std::string("not applicable: ") + e.what();
            } else {
                r.status = CheckStatus::fail;
                r.message = e.what();
            }
        } catch (const std::exception& e) {
            r.status = CheckStatus::fail;
            r.message = std::string("error: ") + e.what();
        } catch (...) {
            r.status = CheckStatus::fail;
            r.message = "unknown error";
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt.on_result) opt.on_result(r);
        rep.checks.push_back(std::move(r));
    };
    for (const auto& d : registry()) {
        if (!wanted(d.info, opt)) continue;
        if (d.info.per_spec) {
            for (const auto& s : specs) run_one(d, s, s.name());
        } else {
            run_one(d, d.fixed_spec(), "");
        }
    }
    return rep;
}

}  // namespace levyhit
