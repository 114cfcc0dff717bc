#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "levyhit/error.hpp"
#include "levyhit/oracle.hpp"
#include "levyhit/parallel.hpp"
#include "stable_batch.hpp"

namespace levyhit {

namespace {

constexpr std::size_t kBlock = 1024;

inline double open_uniform(Rng& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

void fill_uniform(Rng& rng, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = open_uniform(rng);
}

bool continuous_paths(const SymbolSpec& spec) {
    if (const auto* tr = spec.triplet()) return std::holds_alternative<std::monostate>(tr->levy_measure);
    auto parts = spec.stable_components();
    if (parts.empty()) return false;
    return std::all_of(parts.begin(), parts.end(), [](auto p) { return p.second == 2.0; });
}

}  // namespace

std::string to_string(McScheme s) {
    switch (s) {
        case McScheme::exact_stable: return "exact_stable";
        case McScheme::asmussen_rosinski: return "asmussen_rosinski";
        case McScheme::automatic: return "automatic";
    }
    return "?";
}

McScheme mc_scheme_from_string(const std::string& s) {
    if (s == "exact_stable" || s == "exact-stable") return McScheme::exact_stable;
    if (s == "asmussen_rosinski" || s == "asmussen-rosinski") return McScheme::asmussen_rosinski;
    if (s == "automatic" || s == "auto") return McScheme::automatic;
    throw ArgumentError("unknown Monte Carlo scheme '" + s + "'");
}

std::string to_string(BiasNote b) { return b == BiasNote::none ? "none" : "skeleton_undercount"; }

void McConfig::validate() const {
    if (n_paths < 1) throw ArgumentError("McConfig: n_paths must be >= 1");
    if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("McConfig: h must be positive");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw ArgumentError("McConfig: eps must be >= 0 (0 selects the default)");
    if (threads < 0) throw ArgumentError("McConfig: threads must be >= 0");
}

Rng path_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x6c657679u};
    return Rng(seq);
}

double default_small_jump_cutoff(const SymbolSpec& spec, double h) {
    if (!(h > 0.0)) throw ArgumentError("default_small_jump_cutoff: h must be positive");
    if (spec.finite_second_moment()) {
        const double end = std::min(spec.jump_support_end(), 1e8);
        const double total = 2.0 * spec.gaussian_coeff() + 2.0 * spec.small_jump_second_moment(end);
        if (!(total > 0.0)) return end;
        // Largest eps on a geometric grid with 2 m2(eps) <= 1% of the variance rate.
        double eps = end;
        while (eps > 1e-12 && 2.0 * spec.small_jump_second_moment(eps) > 0.01 * total) eps *= 0.5;
        return eps;
    }
    auto a = spec.index_at_infinity();
    if (!a || !(*a > 0.0))
        throw ArgumentError("default_small_jump_cutoff: index of psi at infinity unknown; set eps explicitly");
    return std::pow(h, 1.0 / std::min(*a, 2.0));
}

// ---------------------------------------------------------------------------
// increments

struct IncrementSampler::Impl {
    McScheme scheme = McScheme::exact_stable;
    double h = 0.0;
    double eps = 0.0;

    // exact: (scale, alpha) per component; X_h = sum scale * S_alpha
    std::vector<std::pair<double, double>> components;

    // Asmussen-Rosinski
    double gauss_sd = 0.0;
    double small_var = 0.0;
    double rate = 0.0;  // both signs, per unit time
    // density part: tail mass T at log-spaced nodes, decreasing
    std::vector<double> log_x, log_tail;
    double tail_slope = 0.0;  // d log T / d log x beyond the last node
    bool table_ends_at_support = false;
    // atoms (positions, cumulative masses)
    std::vector<double> atom_x, atom_cum;

    double jump_size(Rng& rng) const {
        if (!atom_x.empty()) {
            const double target = open_uniform(rng) * atom_cum.back();
            auto it = std::upper_bound(atom_cum.begin(), atom_cum.end(), target);
            std::size_t i = std::min<std::size_t>(it - atom_cum.begin(), atom_x.size() - 1);
            return atom_x[i];
        }
        // P(size >= x) = T(x)/T(eps); invert in log-log coordinates.
        const double lt = log_tail.front() + std::log(open_uniform(rng));
        if (lt >= log_tail.front()) return std::exp(log_x.front());
        if (lt < log_tail.back()) {
            if (table_ends_at_support || !(tail_slope < 0.0)) return std::exp(log_x.back());
            return std::exp(log_x.back() + (lt - log_tail.back()) / tail_slope);
        }
        // log_tail decreasing: first node with log_tail <= lt
        auto it = std::lower_bound(log_tail.begin(), log_tail.end(), lt, std::greater<double>());
        std::size_t j = static_cast<std::size_t>(it - log_tail.begin());
        if (j == 0) return std::exp(log_x.front());
        const double t0 = log_tail[j - 1], t1 = log_tail[j];
        const double w = t0 == t1 ? 0.0 : (lt - t0) / (t1 - t0);
        return std::exp(log_x[j - 1] + w * (log_x[j] - log_x[j - 1]));
    }

    void build_jump_table(const SymbolSpec& spec) {
        const double end = spec.jump_support_end();
        auto atoms = spec.atoms_in(eps, std::numeric_limits<double>::infinity());
        if (!atoms.empty()) {
            if (spec.has_density())
                throw ArgumentError("IncrementSampler: mixed atomic and continuous Levy measures are not supported");
            std::sort(atoms.begin(), atoms.end());
            double c = 0.0;
            for (auto [x, m] : atoms) {
                c += m;
                atom_x.push_back(x);
                atom_cum.push_back(c);
            }
            return;
        }
        const double t0 = spec.jump_tail_mass(eps);
        if (!(t0 > 0.0)) return;
        const double step = std::log(10.0) / 32.0;
        double lx = std::log(eps);
        log_x.push_back(lx);
        log_tail.push_back(std::log(t0));
        for (int i = 1; i < 32 * 40; ++i) {
            lx += step;
            double x = std::exp(lx);
            if (x >= end) {
                table_ends_at_support = true;
                break;
            }
            const double t = spec.jump_tail_mass(x);
            if (!(t > 0.0)) {
                table_ends_at_support = true;
                break;
            }
            log_x.push_back(lx);
            log_tail.push_back(std::log(t));
            if (t < 1e-15 * t0) break;
        }
        if (log_x.size() >= 2) {
            const std::size_t n = log_x.size();
            tail_slope = (log_tail[n - 1] - log_tail[n - 2]) / (log_x[n - 1] - log_x[n - 2]);
        }
        if (table_ends_at_support && std::isfinite(end)) {
            // close the table at the support end with a tiny positive mass
            log_x.push_back(std::log(end));
            log_tail.push_back(log_tail.back() - 40.0);
        }
    }

    void fill(Rng& rng, double* out, std::size_t n) const {
        std::array<double, kBlock> a, b, c;
        for (std::size_t off = 0; off < n; off += kBlock) {
            const std::size_t m = std::min(kBlock, n - off);
            double* o = out + off;
            if (scheme == McScheme::exact_stable) {
                std::fill(o, o + m, 0.0);
                for (auto [scale, alpha] : components) {
                    fill_uniform(rng, a.data(), m);
                    fill_uniform(rng, b.data(), m);
                    if (alpha == 2.0) {
                        detail::uniform_to_normal(a.data(), b.data(), c.data(), m);
                    } else {
                        detail::uniform_to_angle(a.data(), m);
                        detail::uniform_to_exponential(b.data(), m);
                        stable_transform(alpha, a.data(), b.data(), c.data(), m);
                    }
                    for (std::size_t i = 0; i < m; ++i) o[i] += scale * c[i];
                }
            } else {
                if (gauss_sd > 0.0) {
                    fill_uniform(rng, a.data(), m);
                    fill_uniform(rng, b.data(), m);
                    detail::uniform_to_normal(a.data(), b.data(), c.data(), m);
                    for (std::size_t i = 0; i < m; ++i) o[i] = gauss_sd * c[i];
                } else {
                    std::fill(o, o + m, 0.0);
                }
                if (rate > 0.0) {
                    // Poisson counts by sequential inversion (mean rate * h is O(1) or below)
                    const double mean = rate * h;
                    const double p0 = std::exp(-mean);
                    for (std::size_t i = 0; i < m; ++i) {
                        double u = open_uniform(rng);
                        double p = p0, cum = p0;
                        int k = 0;
                        while (u > cum && k < 100000) {
                            ++k;
                            p *= mean / k;
                            cum += p;
                            if (p < 1e-300) break;
                        }
                        for (int j = 0; j < k; ++j) {
                            const double s = jump_size(rng);
                            o[i] += (rng() >> 63) ? s : -s;
                        }
                    }
                }
            }
        }
    }
};

IncrementSampler::IncrementSampler(const SymbolSpec& spec, double h, McScheme scheme, double eps)
    : impl_(std::make_unique<Impl>()) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ArgumentError("IncrementSampler: h must be positive");
    auto parts = spec.stable_components();
    if (scheme == McScheme::automatic) scheme = parts.empty() ? McScheme::asmussen_rosinski : McScheme::exact_stable;
    Impl& im = *impl_;
    im.scheme = scheme;
    im.h = h;
    if (scheme == McScheme::exact_stable) {
        if (parts.empty())
            throw ArgumentError("IncrementSampler: exact_stable needs psi to be a sum of stable components (spec " +
                                spec.name() + ")");
        // c |xi|^a over time h is (c h)^{1/a} times the unit stable variate; the
        // a = 2 unit variate is N(0, 2).
        for (auto [c, a] : parts) {
            const double scale = std::pow(c * h, 1.0 / a);
            im.components.emplace_back(a == 2.0 ? scale * std::numbers::sqrt2 : scale, a);
        }
        return;
    }
    im.eps = eps > 0.0 ? eps : default_small_jump_cutoff(spec, h);
    im.small_var = 2.0 * h * spec.small_jump_second_moment(im.eps);
    const double var = im.small_var + 2.0 * spec.gaussian_coeff() * h;
    if (!std::isfinite(var)) throw ArgumentError("IncrementSampler: small-jump variance is not finite");
    im.gauss_sd = std::sqrt(var);
    const double tail = spec.jump_tail_mass(im.eps);
    if (!std::isfinite(tail))
        throw ArgumentError("IncrementSampler: jump tail mass above eps is not finite-computable");
    im.rate = 2.0 * tail;
    if (im.rate * h > 50.0)
        throw ArgumentError("IncrementSampler: " + std::to_string(im.rate * h) +
                            " expected big jumps per step; increase eps");
    if (tail > 0.0) im.build_jump_table(spec);
}

IncrementSampler::~IncrementSampler() = default;
IncrementSampler::IncrementSampler(const IncrementSampler& o) : impl_(std::make_unique<Impl>(*o.impl_)) {}
IncrementSampler& IncrementSampler::operator=(const IncrementSampler& o) {
    if (this != &o) impl_ = std::make_unique<Impl>(*o.impl_);
    return *this;
}

double IncrementSampler::sample(Rng& rng) const {
    double v;
    impl_->fill(rng, &v, 1);
    return v;
}
void IncrementSampler::fill(Rng& rng, std::span<double> out) const { impl_->fill(rng, out.data(), out.size()); }
McScheme IncrementSampler::scheme() const { return impl_->scheme; }
double IncrementSampler::h() const { return impl_->h; }
double IncrementSampler::eps() const { return impl_->eps; }
double IncrementSampler::small_jump_variance() const { return impl_->small_var; }
double IncrementSampler::big_jump_rate() const { return impl_->rate; }

// ---------------------------------------------------------------------------
// path engine

namespace {

/// One path set x_j + S_k shared by every start x_j (common random numbers).
/// For each path and start: first step k (1-based) with |x_j + S_k| <= R, and the
/// first such k that is a multiple of `coarse`; -1 when not hit in n_steps.
struct PathTable {
    std::size_t n_starts = 0;
    std::vector<std::int64_t> fine, coarse;  // [path * n_starts + j]
    std::vector<double> hit_pos;             // fine hit position
    std::vector<double> end;                 // x_j + S_n (only when requested)
};

PathTable run_paths(const IncrementSampler& sampler, std::span<const double> starts, double R, std::int64_t n_steps,
                    int coarse, const McConfig& mc, bool want_end) {
    const std::size_t ns = starts.size();
    const std::size_t np = static_cast<std::size_t>(mc.n_paths);
    PathTable tab;
    tab.n_starts = ns;
    tab.fine.assign(np * ns, -1);
    tab.coarse.assign(np * ns, -1);
    tab.hit_pos.assign(np * ns, std::numeric_limits<double>::quiet_NaN());
    if (want_end) tab.end.assign(np * ns, std::numeric_limits<double>::quiet_NaN());
    constexpr std::size_t chunk = 64;
    const std::size_t n_chunks = (np + chunk - 1) / chunk;
    parallel_for(
        n_chunks,
        [&](std::size_t ci) {
            std::vector<double> buf(kBlock);
            std::vector<std::uint8_t> fine_done(ns), coarse_done(ns);
            for (std::size_t p = ci * chunk; p < std::min(np, (ci + 1) * chunk); ++p) {
                Rng rng = path_rng(mc.seed, p);
                std::fill(fine_done.begin(), fine_done.end(), 0);
                std::fill(coarse_done.begin(), coarse_done.end(), 0);
                std::size_t open = ns;  // starts not yet hit on the coarse skeleton
                double S = 0.0;
                std::int64_t k = 0;
                while (k < n_steps && open > 0) {
                    const std::size_t m = static_cast<std::size_t>(std::min<std::int64_t>(kBlock, n_steps - k));
                    sampler.fill(rng, std::span<double>(buf.data(), m));
                    for (std::size_t i = 0; i < m && open > 0; ++i) {
                        S += buf[i];
                        ++k;
                        const bool observe_coarse = k % coarse == 0;
                        for (std::size_t j = 0; j < ns; ++j) {
                            if (coarse_done[j]) continue;
                            const double pos = starts[j] + S;
                            if (std::abs(pos) > R) continue;
                            const std::size_t idx = p * ns + j;
                            if (!fine_done[j]) {
                                fine_done[j] = 1;
                                tab.fine[idx] = k;
                                tab.hit_pos[idx] = pos;
                            }
                            if (observe_coarse) {
                                coarse_done[j] = 1;
                                tab.coarse[idx] = k;
                                --open;
                            }
                        }
                    }
                }
                if (want_end && k == n_steps)
                    for (std::size_t j = 0; j < ns; ++j) tab.end[p * ns + j] = starts[j] + S;
            }
        },
        mc.threads);
    return tab;
}

McResult proportion(long hits, long n, BiasNote note) {
    McResult r;
    r.n_effective = n;
    r.estimate = static_cast<double>(hits) / static_cast<double>(n);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
    r.bias_note = note;
    return r;
}

}  // namespace

HittingGrid simulate_hitting_grid(const SymbolSpec& spec, std::span<const double> xs, double R,
                                  std::span<const double> ts, const McConfig& mc, bool keep_hits) {
    mc.validate();
    if (R == 0.0)
        throw ArgumentError("simulate_hitting: R = 0 refused; skeletons a.s. miss points (use laplace_point_tail)");
    if (!(R > 0.0)) throw ArgumentError("simulate_hitting: R must be positive");
    if (xs.empty() || ts.empty()) throw ArgumentError("simulate_hitting: empty grid");
    for (double x : xs)
        if (!(std::abs(x) > R)) throw ArgumentError("simulate_hitting: need |x| > R");
    for (double t : ts)
        if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("simulate_hitting: t must be positive");
    const double hf = mc.h / 4.0;
    IncrementSampler sampler(spec, hf, mc.scheme, mc.eps);
    const double tmax = *std::max_element(ts.begin(), ts.end());
    auto steps_of = [&](double t) { return static_cast<std::int64_t>(std::floor(t / hf + 1e-9)); };
    const std::int64_t n_steps = steps_of(tmax);
    auto tab = run_paths(sampler, xs, R, n_steps, 4, mc, false);

    HittingGrid g;
    g.xs.assign(xs.begin(), xs.end());
    g.ts.assign(ts.begin(), ts.end());
    g.R = R;
    const std::size_t ns = xs.size();
    const long np = mc.n_paths;
    for (std::size_t j = 0; j < ns; ++j) {
        for (double t : ts) {
            const std::int64_t nt = steps_of(t);
            long sf = 0, sc = 0;
            for (long p = 0; p < np; ++p) {
                const auto f = tab.fine[p * ns + j], c = tab.coarse[p * ns + j];
                if (f < 0 || f > nt) ++sf;
                if (c < 0 || c > nt) ++sc;
            }
            HittingRun run;
            run.x = xs[j];
            run.t = t;
            run.R = R;
            run.fine = proportion(sf, np, BiasNote::skeleton_undercount);
            run.coarse = proportion(sc, np, BiasNote::skeleton_undercount);
            run.bias_bar = std::abs(run.fine.estimate - run.coarse.estimate);
            if (keep_hits)
                for (long p = 0; p < np; ++p) {
                    const auto f = tab.fine[p * ns + j];
                    if (f >= 0 && f <= nt) run.hit_positions.push_back(tab.hit_pos[p * ns + j]);
                }
            g.runs.push_back(std::move(run));
        }
    }
    return g;
}

HittingRun simulate_hitting(const SymbolSpec& spec, double x, double R, double t, const McConfig& mc, bool keep_hits) {
    double xs[] = {x};
    double ts[] = {t};
    return simulate_hitting_grid(spec, xs, R, ts, mc, keep_hits).runs.front();
}

McResult simulate_exit_time(const SymbolSpec& spec, double x, double R, const McConfig& mc) {
    mc.validate();
    if (!continuous_paths(spec))
        throw HypothesisError("simulate_exit_time: skeleton exit times are only used for continuous paths",
                              "continuous paths (no Levy measure)");
    if (!(R > 0.0) || !(std::abs(x) < R) || x == 0.0)
        throw ArgumentError("simulate_exit_time: need 0 < |x| < R");
    IncrementSampler sampler(spec, mc.h, McScheme::automatic, 0.0);
    const std::size_t np = static_cast<std::size_t>(mc.n_paths);
    std::vector<double> tau(np);
    const std::int64_t max_steps = 2'000'000'000LL;
    parallel_for(
        np,
        [&](std::size_t p) {
            Rng rng = path_rng(mc.seed, p);
            std::vector<double> buf(kBlock);
            double pos = x;
            std::int64_t k = 0;
            for (;;) {
                sampler.fill(rng, buf);
                for (double d : buf) {
                    ++k;
                    const double next = pos + d;
                    if (std::abs(next) >= R || next * x <= 0.0) {
                        tau[p] = static_cast<double>(k) * mc.h;
                        return;
                    }
                    pos = next;
                }
                if (k > max_steps) throw NumericalError("simulate_exit_time: path did not exit", 0.0);
            }
        },
        mc.threads);
    McResult r;
    r.n_effective = mc.n_paths;
    double mean = 0.0;
    for (double v : tau) mean += v;
    mean /= static_cast<double>(np);
    double var = 0.0;
    for (double v : tau) var += (v - mean) * (v - mean);
    var /= std::max<double>(1.0, static_cast<double>(np) - 1.0);
    r.estimate = mean;
    r.std_error = std::sqrt(var / static_cast<double>(np));
    r.bias_note = BiasNote::none;
    return r;
}

KilledKernelEstimate simulate_killed_kernel(const SymbolSpec& spec, double x, double r, double t,
                                            std::span<const double> ys, const McConfig& mc,
                                            const BandwidthRule& rule) {
    mc.validate();
    if (!(r > 0.0)) throw ArgumentError("simulate_killed_kernel: r must be positive");
    if (!(std::abs(x) > r)) throw ArgumentError("simulate_killed_kernel: need |x| > r");
    if (!(t > 0.0)) throw ArgumentError("simulate_killed_kernel: t must be positive");
    if (!(rule.floor_factor >= 0.0)) throw ArgumentError("simulate_killed_kernel: negative bandwidth floor");
    IncrementSampler sampler(spec, mc.h, mc.scheme, mc.eps);
    const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(t / mc.h));
    double xs[] = {x};
    auto tab = run_paths(sampler, xs, r, n_steps, 1, mc, true);

    std::vector<double> surv;
    for (long p = 0; p < mc.n_paths; ++p)
        if (tab.fine[p] < 0) surv.push_back(tab.end[p]);
    KilledKernelEstimate est;
    est.x = x;
    est.r = r;
    est.t = t;
    est.y.assign(ys.begin(), ys.end());
    est.survival = proportion(static_cast<long>(surv.size()), mc.n_paths, BiasNote::skeleton_undercount);
    if (surv.size() < 100)
        throw InsufficientSampleError("simulate_killed_kernel: " + std::to_string(surv.size()) +
                                          " surviving paths (need 100)",
                                      est.survival.estimate);

    double step_scale = 0.0;
    try {
        step_scale = 1.0 / spec.psi_inverse(1.0 / mc.h);
    } catch (const Error&) {
        step_scale = std::sqrt(mc.h);
    }
    // Silverman's rule per half-line, floored at a multiple of the typical step.
    std::vector<double> side[2];  // 0: same sign as x, 1: opposite
    for (double v : surv) side[(v > 0.0) != (x > 0.0)].push_back(v);
    double bw[2] = {0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
        auto& s = side[k];
        std::sort(s.begin(), s.end());
        if (s.size() < 2) continue;
        const double n = static_cast<double>(s.size());
        const double mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
        double var = 0.0;
        for (double v : s) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / (n - 1.0));
        auto quantile = [&](double q) { return s[static_cast<std::size_t>(q * (s.size() - 1))]; };
        const double iqr = quantile(0.75) - quantile(0.25);
        const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
        bw[k] = std::max(0.9 * spread * std::pow(n, -0.2), rule.floor_factor * step_scale);
    }
    est.bandwidth = bw[0];
    est.bandwidth_other = bw[1];

    const double N = static_cast<double>(mc.n_paths);
    est.density.assign(ys.size(), 0.0);
    est.std_error.assign(ys.size(), 0.0);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!(std::abs(ys[i]) > r)) continue;  // outside D the killed density is 0
        const int k = (ys[i] > 0.0) != (x > 0.0);
        const auto& s = side[k];
        if (bw[k] == 0.0) continue;
        const double norm = 1.0 / (bw[k] * std::sqrt(2.0 * std::numbers::pi));
        const double cut = 8.0 * bw[k];
        auto lo = std::lower_bound(s.begin(), s.end(), ys[i] - cut);
        auto hi = std::upper_bound(s.begin(), s.end(), ys[i] + cut);
        double s1 = 0.0, s2 = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const double z = (ys[i] - *it) / bw[k];
            const double kv = norm * std::exp(-0.5 * z * z);
            s1 += kv;
            s2 += kv * kv;
        }
        const double m1 = s1 / N;
        est.density[i] = m1;
        est.std_error[i] = std::sqrt(std::max(0.0, s2 / N - m1 * m1) / N);
    }
    for (std::size_t i = 1; i < ys.size(); ++i)
        est.mass += 0.5 * (est.density[i] + est.density[i - 1]) * (ys[i] - ys[i - 1]);
    return est;
}

HkProductReport hk_product_check(const SymbolSpec& spec, double r, std::span<const double> xs,
                                 std::span<const double> ys, std::span<const double> ts, const McConfig& mc,
                                 const ScalingCertificate& lower, const ScalingCertificate& upper) {
    if (spec.is_unimodal() != Tri::yes)
        throw HypothesisError("hk_product_check: the spec must be unimodal", "unimodal = yes");
    if (lower.kind != ScalingKind::wlsc || !lower.passing || !(lower.index > 1.0))
        throw HypothesisError("hk_product_check: needs a passing lower scaling certificate", "WLSC(alpha > 1)");
    if (upper.kind != ScalingKind::wusc || !upper.passing || !(upper.index < 2.0))
        throw HypothesisError("hk_product_check: needs a passing upper scaling certificate", "WUSC(beta < 2)");
    if (xs.empty() || ys.empty() || ts.empty()) throw ArgumentError("hk_product_check: empty grid");
    for (double y : ys)
        if (!(std::abs(y) > r)) throw ArgumentError("hk_product_check: need |y| > r");

    HkProductReport rep;
    rep.min = std::numeric_limits<double>::infinity();
    rep.max = 0.0;
    for (double t : ts) {
        std::vector<KilledKernelEstimate> from_x;
        for (double x : xs) from_x.push_back(simulate_killed_kernel(spec, x, r, t, ys, mc));
        // survival from y on the same skeleton step as the killed kernel
        IncrementSampler sampler(spec, mc.h, mc.scheme, mc.eps);
        const std::int64_t n_steps = std::max<std::int64_t>(1, std::llround(t / mc.h));
        auto tab = run_paths(sampler, ys, r, n_steps, 1, mc, false);
        std::vector<double> surv_y(ys.size());
        for (std::size_t j = 0; j < ys.size(); ++j) {
            long s = 0;
            for (long p = 0; p < mc.n_paths; ++p) s += tab.fine[p * ys.size() + j] < 0;
            surv_y[j] = static_cast<double>(s) / static_cast<double>(mc.n_paths);
        }
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                HkEntry e{};
                e.x = xs[ix];
                e.y = ys[iy];
                e.t = t;
                e.killed = from_x[ix].density[iy];
                e.killed_se = from_x[ix].std_error[iy];
                e.survival_x = from_x[ix].survival.estimate;
                e.survival_y = surv_y[iy];
                e.free = heat_kernel_free(spec, xs[ix] - ys[iy], t);
                e.ratio = e.killed / (e.survival_x * e.survival_y * e.free);
                rep.min = std::min(rep.min, e.ratio);
                rep.max = std::max(rep.max, e.ratio);
                rep.entries.push_back(e);
            }
        }
    }
    rep.spread = rep.min > 0.0 ? rep.max / rep.min : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace levyhit
