#pragma once

// Two-sided estimates for P^x(T_0 > t) and P^x(T_{[-R,R]} > t), the explicit
// bounds around exit times from (-R, R) \ {0}, and large-time asymptotic constants.
//
// Every band records the constants it used. Constants with explicit values are
// hard-coded (and overridable through ProvenConstants for mutation checks);
// comparability constants without values are calibrated once per spec against
// an oracle on a fixed 5 x 5 grid and flagged as empirical.

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "levyhit/oracle.hpp"
#include "levyhit/renewal.hpp"
#include "levyhit/symbols.hpp"

namespace levyhit {

enum class Provenance { proven, empirical };
std::string to_string(Provenance p);

struct ConstantUsed {
    std::string name;
    double value = 0.0;
    Provenance provenance = Provenance::proven;
};

enum class Regime { point_general, point_comparable, point_unimodal, point_wlsc, interval_short_t, interval_long_t,
                    asymptotic, escape };
std::string to_string(Regime r);

struct EstimateBand {
    double lower = 0.0;
    double upper = 1.0;
    double central = 0.0;  // the comparability expression the band is built around
    Regime regime = Regime::point_general;
    std::vector<ConstantUsed> constants_used;
    /// Equivalent or weaker forms reported next to the band (e.g. "upper_51pi3").
    std::map<std::string, double> alternates;
    bool clamped = false;  // some raw bound exceeded 1 and was cut to 1
    std::vector<std::string> notes;
};

inline constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
inline constexpr double kPi3 = kPi2 * std::numbers::pi;

/// Explicit constants of the estimates. Defaults are the proven values.
struct ProvenConstants {
    double tail_upper_tilde = 7.0;                    // P <= 7 K(x)/K~(1/psi^{-1}(1/t))
    double tail_upper_explicit = 51.0 * kPi3;  // 51 pi^3
    double tail_upper_optimal = 8.0;                  // P <= 8 K(x)/K(R_t)
    double exit_time = 4.0;                           // E tau ^ T_0 <= 4 R K(x)
    double escape_lower = 1.0 / 6.0;                  // P(tau < T_0) >= K(x)/(6 K(R))
    double escape_upper = 4.0;                        // P(tau < T_0) <= 4 K(x)/K(R)
    double unimodal_comparability = 1.0 / kPi2;  // psi >= pi^{-2} psi* for unimodal X
    double potential_lower_tilde = 0.25;              // u^l(0) >= K~(1/psi^{-1}(l))/4
    double potential_lower_explicit = 1.0 / (32.0 * kPi3);  // >= psi^{-1}(l)/(32 pi^3 l)
    double potential_lower_a = 0.25;                  // u^l(0) >= (a/4) K(1/psi^{-1}(l))
    double potential_upper_a = 1.5 * kPi2;  // u^l(0) <= (3 pi^2/(2a)) K(1/psi^{-1}(l))
    double k_lambda_lower = 1.0 / (10.0 * kPi2);  // K^l(x) >= (a/(10 pi^2)) K(x)
};

// ---------------------------------------------------------------------------
// hypotheses

/// Largest a on a log grid of [1e-6, 1e6] (and on the refined grid) with
/// psi >= a psi*; passing when the two agree within 5%.
struct ComparabilityCertificate {
    double a = 0.0;
    double a_refined = 0.0;
    bool passing = false;
};
ComparabilityCertificate certify_comparability(const SymbolSpec& spec);

/// WLSC certificate at the smaller declared index of psi (at 0 and at infinity),
/// retried halfway towards 1 when that fails. Not passing when the index is <= 1
/// or undeclared.
ScalingCertificate wlsc_above_one(const SymbolSpec& spec);
/// WUSC certificate at the larger declared index; not passing when it is >= 2.
ScalingCertificate wusc_below_two(const SymbolSpec& spec);

struct MonotonicityReport {
    Tri nondecreasing = Tri::unknown;
    double worst_drop = 0.0;  // largest relative decrease K(x_i) -> K(x_{i+1}) beyond tolerance
    int points = 0;
    std::string source;       // "unimodal flag" or "grid"
};

/// K nondecreasing on [0, inf): yes for unimodal specs, otherwise checked on a
/// 512-point geometric grid of [1e-4, 1e4] (a decrease beyond the quadrature
/// tolerance means no). Cached per spec.
MonotonicityReport check_K_monotone(const SymbolSpec& spec, int points = 512);

// ---------------------------------------------------------------------------
// point target

enum class PointMode { general, comparable, unimodal, wlsc };
std::string to_string(PointMode m);
PointMode point_mode_from_string(const std::string& s);

struct PointModeConfig {
    PointMode mode = PointMode::general;
    double a = 0.0;  // comparable mode: coefficient in psi >= a psi* (0: use the certified value)
};

/// Comparability constants of the point band, calibrated once per (spec, mode) on
/// x in {0.13, 0.47, 1.7, 6.1, 22}, t in {0.037, 0.29, 2.3, 18, 140} against
/// laplace_point_tail: the extreme ratios oracle / central, widened by 10%.
struct PointCalibration {
    double c_lower = 0.0;  // min over the grid of oracle / central
    double c_upper = 0.0;  // max over the grid of oracle / central
    double sandwich_c1 = 0.0;  // C1 of V ~ 1/sqrt(psi*(1/r)), from renewal_sandwich_constant
    int points = 0;
};
PointCalibration calibrate_point_band(const SymbolSpec& spec, const PointModeConfig& mode);

/// Band for P^x(T_0 > t).
///   upper: min(7 K(x)/K~(1/psi^{-1}(1/t)), 1); 51 pi^3 K(x)/(t psi^{-1}(1/t)) reported;
///          comparable: (7/a) K(x)/K(1/psi^{-1}(1/t)); unimodal uses a = pi^{-2};
///          wlsc uses a = the certified WLSC coefficient.
///   central: K(x)/K(1/psi^{-1}(1/t)) ^ 1 (wlsc: also 1/(t psi^{-1}(1/t)|x| psi(1/x)) ^ 1).
///   lower: (C3/(6 C1)) central when K is nondecreasing, c central in wlsc mode,
///          with the factor calibrated; 0 when neither hypothesis holds.
EstimateBand point_tail_band(const SymbolSpec& spec, double x, double t, const PointModeConfig& mode = {},
                             const ProvenConstants& pc = {});

struct OptimalRadius {
    double R_t = 0.0;    // R K(R) = t
    double bound = 1.0;  // min(8 K(x)/K(R_t), 1)
};

/// Requires kappa = 0 and K nondecreasing.
OptimalRadius point_tail_optimal_R(const SymbolSpec& spec, double x, double t, const ProvenConstants& pc = {});

// ---------------------------------------------------------------------------
// interval target

/// Shape of the interval estimate:
///   t <= 1/psi*(1/R):  V(|x| - R) / (sqrt t ^ V(R)) ^ 1
///   t >  1/psi*(1/R):  V(|x| - R) K(|x|) / (V(|x|) t psi^{-1}(1/t)) ^ 1
/// (alternate long-t form with K(1/psi^{-1}(1/t)) in the denominator); for finite
/// second moment the single form V(|x| - R)/sqrt t ^ 1.
struct IntervalShape {
    double central = 0.0;
    double alternate = 0.0;  // long-t K(1/psi^{-1}(1/t)) form (equals central otherwise)
    Regime regime = Regime::interval_short_t;
    double t_split = 0.0;    // 1/psi*(1/R)
    bool single_form = false;
};
IntervalShape interval_shape(const SymbolSpec& spec, double x, double R, double t);

/// Empirical two-sided constants per regime from a Monte Carlo calibration on
/// x = R * {1.3, 1.75, 2.6, 4.5, 9}, t = t_split * {0.06, 0.35, 1.8, 7, 30}
/// (extreme ratios estimate / central, widened by 10%).
struct IntervalCalibration {
    double R = 0.0;
    double short_lower = 0.0, short_upper = 0.0;
    double long_lower = 0.0, long_upper = 0.0;
    int short_points = 0, long_points = 0;
    McConfig mc;
};
IntervalCalibration calibrate_interval_band(const SymbolSpec& spec, double R, const McConfig& mc);

/// Band for P^x(T_{[-R,R]} > t); needs a passing WLSC(alpha > 1) certificate.
/// Without a calibration the band is [0, 1] around the central expression.
EstimateBand interval_tail_band(const SymbolSpec& spec, double x, double R, double t,
                                const IntervalCalibration* calibration = nullptr);

// ---------------------------------------------------------------------------
// asymptotics

/// Target of tail_asymptotic: the point 0, or [center - R, center + R].
struct AsymptoticTarget {
    double R = 0.0;       // 0: point target
    double center = 0.0;  // intervals not containing 0 are shifted by -center
};

struct AsymptoticOptions {
    McConfig mc{10000, 2e-3, 0.0, 7};
    double horizon = 100.0;  // simulated time for hitting positions
};

struct AsymptoticResult {
    double constant = 0.0;   // lim N(t) P^x(T_B > t)
    double std_error = 0.0;  // Monte Carlo part (interval targets)
    double delta = 0.0;
    std::string normalizer;  // "t psi^{-1}(1/t)" or "L(1/t)"
    double shift = 0.0;      // recentering applied to x and B
    double expected_K_at_hit = 0.0;  // E^x K(X_{T_B}) (0 for the point)
    double unhit_fraction = 0.0;     // paths that had not hit B by the horizon
    bool stochastic = false;
};

/// Limit constant of N(t) P^x(T_B > t), N(t) = t psi^{-1}(1/t) for delta > 1 and
/// L(1/t) = (1/pi) int_{psi^{-1}(1/t)}^inf ds/psi(s) for delta = 1. delta defaults
/// to the declared index of psi at 0.
AsymptoticResult tail_asymptotic(const SymbolSpec& spec, double x, const AsymptoticTarget& target = {},
                                 std::optional<double> delta = std::nullopt, const AsymptoticOptions& opt = {});

/// N(t) for the given index.
double asymptotic_normalizer(const SymbolSpec& spec, double t, double delta);

/// delta Gamma(1 - 1/delta) sin^2(pi/delta) / pi for delta in (1, 2]; 1 for delta = 1.
double asymptotic_factor(double delta);

// ---------------------------------------------------------------------------
// exit from (-R, R) \ {0}

struct ExitEscapeBounds {
    double expectation_bound = 0.0;  // 4 R K(x) >= E^x[tau ^ T_0]
    EstimateBand escape;             // band for P^x(tau_{(-R,R)} < T_0)
};

/// The escape band needs K nondecreasing; its upper half needs kappa = 0 (otherwise
/// upper = 1 with a note).
ExitEscapeBounds exit_escape_bounds(const SymbolSpec& spec, double x, double R, const ProvenConstants& pc = {});

}  // namespace levyhit
