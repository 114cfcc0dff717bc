#pragma once

// Ground truth: exact point-hitting tails by Laplace inversion, free transition
// densities by Fourier inversion, and Monte Carlo skeletons for interval hitting
// and killed transition densities.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "levyhit/laplace.hpp"
#include "levyhit/quadrature.hpp"
#include "levyhit/renewal.hpp"
#include "levyhit/symbols.hpp"

namespace levyhit {

// ---------------------------------------------------------------------------
// deterministic oracles

/// Inversion settings used for point tails: Talbot with 20 nodes (the transform is
/// analytic off the negative half-line for every spec), Gaver-Stehfest fallback.
InversionConfig point_tail_inversion();

/// P^x(T_0 > t) by inverting (1/lambda)(1 - u^lambda(x)/u^lambda(0)) = K^lambda(x)/(lambda u^lambda(0)).
double laplace_point_tail(const SymbolSpec& spec, double x, double t,
                          const InversionConfig& icfg = point_tail_inversion(), const QuadratureConfig& qcfg = {});

/// Same for several starting points at one time; u^lambda(0) is shared between them.
std::vector<double> laplace_point_tail(const SymbolSpec& spec, std::span<const double> xs, double t,
                                       const InversionConfig& icfg = point_tail_inversion(),
                                       const QuadratureConfig& qcfg = {});

/// p_t(x) = (1/pi) int_0^inf cos(xs) e^{-t psi(s)} ds.
double heat_kernel_free(const SymbolSpec& spec, double x, double t, const QuadratureConfig& cfg = {});

/// P(X_t <= x) = 1/2 + (1/pi) int_0^inf sin(xs)/s e^{-t psi(s)} ds.
double heat_kernel_cdf(const SymbolSpec& spec, double x, double t, const QuadratureConfig& cfg = {});

/// psi^{-1}(1/t) ^ t / (|x| V^2(|x|)): the two-regime shape of p_t(x) for unimodal
/// processes with two-sided scaling.
double heat_kernel_central(const SymbolSpec& spec, const RenewalProfile& profile, double x, double t);

// ---------------------------------------------------------------------------
// Monte Carlo

enum class McScheme { exact_stable, asmussen_rosinski, automatic };
std::string to_string(McScheme s);
McScheme mc_scheme_from_string(const std::string& s);

struct McConfig {
    long n_paths = 100000;
    double h = 1e-3;     // skeleton step
    double eps = 0.0;    // small-jump cut-off for Asmussen-Rosinski (0: automatic rule)
    std::uint64_t seed = 1;
    McScheme scheme = McScheme::automatic;
    int threads = 0;     // 0: LEVYHIT_THREADS or hardware concurrency

    void validate() const;
};

enum class BiasNote { none, skeleton_undercount };
std::string to_string(BiasNote b);

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long n_effective = 0;
    BiasNote bias_note = BiasNote::none;
};

using Rng = std::mt19937_64;

/// Independent stream for path `index`, a pure function of (seed, index).
Rng path_rng(std::uint64_t seed, std::uint64_t index);

/// Draws increments X_h of the process.
///   exact_stable: psi = sum_j c_j |xi|^{a_j}; each component sampled exactly
///     (Chambers-Mallows-Stuck, Gaussian for a = 2) and added.
///   asmussen_rosinski: jumps of size >= eps as compound Poisson from nu, smaller
///     jumps replaced by N(0, 2h int_0^eps x^2 nu(dx)), plus N(0, 2 sigma^2 h).
class IncrementSampler {
public:
    IncrementSampler(const SymbolSpec& spec, double h, McScheme scheme = McScheme::automatic, double eps = 0.0);
    ~IncrementSampler();
    IncrementSampler(const IncrementSampler&);
    IncrementSampler& operator=(const IncrementSampler&);

    double sample(Rng& rng) const;
    void fill(Rng& rng, std::span<double> out) const;

    McScheme scheme() const;
    double h() const;
    double eps() const;              // 0 for exact sampling
    double small_jump_variance() const;
    double big_jump_rate() const;    // per unit time, both signs

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

/// Default cut-off: 2 int_0^eps x^2 nu <= 1% of the total increment variance when
/// that is finite, else eps = h^{1/alpha} with alpha the index of psi at infinity.
double default_small_jump_cutoff(const SymbolSpec& spec, double h);

/// Fills out[i] = F^{-1} for symmetric alpha-stable variates (psi = |xi|^alpha)
/// from uniforms u in (-pi/2, pi/2) and standard exponentials w.
void stable_transform(double alpha, const double* u, const double* w, double* out, std::size_t n);

struct HittingRun {
    double x = 0.0, t = 0.0, R = 0.0;
    McResult coarse;          // skeleton step h
    McResult fine;            // skeleton step h/4
    double bias_bar = 0.0;    // |fine - coarse|
    std::vector<double> hit_positions;  // first skeleton position inside [-R, R] (fine skeleton)
};

struct HittingGrid {
    std::vector<double> xs, ts;
    double R = 0.0;
    std::vector<HittingRun> runs;  // index ix * ts.size() + it
    const HittingRun& at(std::size_t ix, std::size_t it) const { return runs[ix * ts.size() + it]; }
};

/// P^x(T_{[-R,R]} > t) from skeletons at steps h and h/4; the coarse skeleton is
/// the fine one observed every fourth step (one path set, common random numbers
/// across all x). R = 0 is refused: skeletons a.s. miss points.
HittingGrid simulate_hitting_grid(const SymbolSpec& spec, std::span<const double> xs, double R,
                                  std::span<const double> ts, const McConfig& mc, bool keep_hits = false);
HittingRun simulate_hitting(const SymbolSpec& spec, double x, double R, double t, const McConfig& mc,
                            bool keep_hits = false);

/// E^x[tau_{(-R,R)} ^ T_0] for processes with continuous paths (T_0 = first sign
/// change of the skeleton); refused for specs with jumps.
McResult simulate_exit_time(const SymbolSpec& spec, double x, double R, const McConfig& mc);

struct BandwidthRule {
    double floor_factor = 2.0;  // bandwidth >= floor_factor * (typical step size)
};

struct KilledKernelEstimate {
    double x = 0.0, r = 0.0, t = 0.0;
    std::vector<double> y;
    std::vector<double> density;
    std::vector<double> std_error;
    double bandwidth = 0.0;        // on the half-line containing x
    double bandwidth_other = 0.0;  // on the opposite half-line (0: fewer than 2 survivors there)
    McResult survival;        // P^x(tau_D > t), D = (-inf,-r) u (r,inf)
    double mass = 0.0;        // trapezoidal integral of the density over y (when y is a fine grid)
};

/// Gaussian-kernel density of X_t on {tau_D > t} from surviving skeleton endpoints.
/// Each half-line of D gets its own bandwidth from its own survivors and the
/// kernel never reaches across [-r, r].
/// Throws InsufficientSampleError with fewer than 100 survivors.
KilledKernelEstimate simulate_killed_kernel(const SymbolSpec& spec, double x, double r, double t,
                                            std::span<const double> ys, const McConfig& mc,
                                            const BandwidthRule& rule = {});

struct HkEntry {
    double x, y, t;
    double ratio;
    double killed, survival_x, survival_y, free;
    double killed_se = 0.0;
};

struct HkProductReport {
    std::vector<HkEntry> entries;
    double min = 0.0, max = 0.0, spread = 0.0;
};

/// rho(x,y,t) = p^D_t(x,y) / (P^x(tau_D>t) P^y(tau_D>t) p_t(x-y)) over the grid.
/// Requires unimodal = yes and passing WLSC(alpha > 1), WUSC(beta < 2) certificates.
HkProductReport hk_product_check(const SymbolSpec& spec, double r, std::span<const double> xs,
                                 std::span<const double> ys, std::span<const double> ts, const McConfig& mc,
                                 const ScalingCertificate& lower, const ScalingCertificate& upper);

}  // namespace levyhit
