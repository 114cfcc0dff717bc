#pragma once

// Ladder-height exponent, renewal function V and the Green function of the
// half-line (0, inf).
//
//   kappa(xi) = exp{ (1/pi) int_0^inf log psi(xi z) / (1 + z^2) dz }
//   Laplace transform of V is 1 / (xi kappa(xi)), of V' is 1 / kappa(xi).
//
// Normalization: V is the exact inverse transform of 1/(xi kappa(xi)), so for
// psi = |xi|^alpha it equals x^{alpha/2} / Gamma(1 + alpha/2) (and V(x) = x for
// psi = xi^2). stable_renewal_constant() returns that factor.

#include <cstdint>
#include <string>
#include <vector>

#include "levyhit/laplace.hpp"
#include "levyhit/quadrature.hpp"
#include "levyhit/symbols.hpp"

namespace levyhit {

/// kappa(xi) by quadrature of the log-symbol over z = e^w (never a closed form).
double ladder_exponent(const SymbolSpec& spec, double xi, const QuadratureConfig& cfg = {});

/// True when kappa extends analytically off the real axis in closed form
/// (psi = c |xi|^a, a single stable component); Talbot inversion needs it.
bool ladder_exponent_has_continuation(const SymbolSpec& spec);

/// Method actually used for `spec` under cfg.method (automatic -> Talbot when the
/// continuation exists, Gaver-Stehfest otherwise).
InversionMethod resolve_method(const SymbolSpec& spec, const InversionConfig& cfg);

/// V(x); 0 for x <= 0.
double renewal_V(const SymbolSpec& spec, double x, const InversionConfig& icfg = {},
                 const QuadratureConfig& qcfg = {});

/// V'(x) by inversion of 1/kappa. With icfg.cross_check the value is compared
/// with central differences of V (relative step 1e-4; 1e-3 under Gaver-Stehfest).
double renewal_V_prime(const SymbolSpec& spec, double x, const InversionConfig& icfg = {},
                       const QuadratureConfig& qcfg = {});

/// 1 / Gamma(1 + alpha/2): V(x) = stable_renewal_constant(alpha) x^{alpha/2} for
/// psi = |xi|^alpha.
double stable_renewal_constant(double alpha);

/// V and V' tabulated on a geometric grid, interpolated in log-log coordinates
/// and extended by the end power laws outside the grid.
class RenewalProfile {
public:
    RenewalProfile() = default;
    static RenewalProfile build(const SymbolSpec& spec, double x_min = 1e-4, double x_max = 1e4,
                                int per_decade = 16, const InversionConfig& icfg = {},
                                const QuadratureConfig& qcfg = {});

    double V(double x) const;
    double V_prime(double x) const;

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& values() const { return v_; }
    const std::vector<double>& derivatives() const { return dv_; }
    InversionMethod method() const { return method_; }
    std::uint64_t spec_hash() const { return hash_; }
    double x_min() const { return x_.empty() ? 0.0 : x_.front(); }
    double x_max() const { return x_.empty() ? 0.0 : x_.back(); }

    /// Checks V(0) = 0 convention, V strictly increasing and V' > 0 on the grid.
    bool valid() const;

private:
    double eval(const std::vector<double>& logy, double x) const;
    std::vector<double> x_, v_, dv_, logv_, logdv_;
    double log_x0_ = 0.0, log_step_ = 1.0;
    InversionMethod method_ = InversionMethod::automatic;
    std::uint64_t hash_ = 0;
};

/// Shared per-spec profile on the default grid (built once, thread-safe).
const RenewalProfile& cached_profile(const SymbolSpec& spec);

/// G_{(0,inf)}(x, y) = int_0^{x ^ y} V'(u) V'(|y - x| + u) du, with u = (x ^ y) v^2.
double green_halfline(const SymbolSpec& spec, double x, double y, const InversionConfig& icfg = {},
                      const QuadratureConfig& qcfg = {});
double green_halfline(const RenewalProfile& profile, double x, double y, double rel_tol = 1e-9);

/// M(x, z) = int_0^z G_{(0,inf)}(x, y) dy through the potential-measure identity
/// M = int_0^z V'(y) [V(x) - V((x + y - z) v 0)] dy.
double green_halfline_mass(const RenewalProfile& profile, double x, double z, double rel_tol = 1e-9);
/// Same quantity by quadrature of green_halfline in y (slow; cross-check route).
double green_halfline_mass_direct(const RenewalProfile& profile, double x, double z, double rel_tol = 1e-7);

struct PropertyHReport {
    std::vector<double> deltas;
    double h = 0.0;          // sup V'(u)/V'(w) on the base pair set
    double h_refined = 0.0;  // same with twice the pairs
    int pairs = 0;
    bool passing = false;    // finite and stable (relative change < 5%) under refinement
};

/// Empirical (H) constant over pairs delta <= w <= u <= w + 2 delta, w log-uniform
/// in [delta, 100 delta].
PropertyHReport check_property_H(const RenewalProfile& profile, std::vector<double> deltas = {0.01, 0.1, 1.0, 10.0},
                                 int pairs = 200, std::uint64_t seed = 1);

struct SandwichConstant {
    double c = 0.0;          // max over the grid of max(V sqrt(psi*(1/r)), 1/(V sqrt(psi*(1/r))))
    double c_refined = 0.0;
    double r_min = 1e-3, r_max = 1e3;
    bool passing = false;    // finite and stable (relative change < 5%) under refinement
};

/// Smallest C with V(r) sqrt(psi*(1/r)) in [1/C, C] over a geometric r grid.
SandwichConstant renewal_sandwich_constant(const SymbolSpec& spec, const RenewalProfile& profile,
                                           double r_min = 1e-3, double r_max = 1e3, int points = 61);

}  // namespace levyhit
