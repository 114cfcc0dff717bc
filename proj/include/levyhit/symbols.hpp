#pragma once

// Characteristic exponents of symmetric Levy processes on the line.
//
// psi(xi) = \int (1 - cos(xi x)) nu(dx) + sigma^2 xi^2, with nu symmetric; only the
// positive half-line of nu is stored and its contribution is doubled.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "levyhit/quadrature.hpp"

namespace levyhit {

/// Tri-state knowledge flag. The toolkit records declared knowledge, it never infers
/// unimodality.
enum class Tri { no, yes, unknown };

std::string to_string(Tri t);
Tri tri_from_string(std::string_view s);

enum class Family { stable, brownian, cauchy_plus_bm, log_perturbed, atomic_stablelike, two_stable, triplet };

std::string to_string(Family f);

/// Closed-form Levy densities on (0, inf):
///   "stable"           params {alpha, scale=1}: scale * c_alpha x^{-1-alpha}
///   "log_perturbed"    params {}: log^2(2 + 1/x) log(2 + x) / x^2
///   "truncated_stable" params {alpha, cutoff}: c_alpha x^{-1-alpha} on (0, cutoff]
struct DensityTag {
    std::string name;
    std::vector<double> params;
};

/// Tabulated density, log-log interpolated; outside the table either power-law
/// extrapolated from the end slopes or set to zero.
struct DensityTable {
    std::vector<double> x;
    std::vector<double> nu;
    bool power_left = true;
    bool power_right = true;
};

struct AtomList {
    std::vector<std::pair<double, double>> atoms;  // (position > 0, mass > 0)
};

struct LevyTriplet {
    double gaussian_coeff = 0.0;
    std::variant<std::monostate, DensityTag, DensityTable, AtomList> levy_measure;

    /// Checks positivity of atoms, table sanity and int (x^2 ^ 1) nu(dx) < inf.
    void validate() const;
};

class SymbolSpec {
public:
    static SymbolSpec stable(double alpha);
    static SymbolSpec brownian(double sigma2 = 1.0);
    static SymbolSpec cauchy_plus_bm();
    static SymbolSpec log_perturbed();
    static SymbolSpec atomic_stablelike(double alpha);
    static SymbolSpec two_stable(double alpha1, double alpha2);
    static SymbolSpec from_triplet(LevyTriplet triplet, Tri unimodal = Tri::unknown,
                                   Tri nondecreasing = Tri::unknown);
    /// Builtin by family name ("stable", "brownian", ...); params in declaration order.
    static SymbolSpec make_builtin(std::string_view family, std::span<const double> params);

    Family family() const;
    const std::vector<double>& params() const;
    const LevyTriplet* triplet() const;  // null for builtins
    std::string name() const;
    /// Text config that parses back to an equal spec (for tabulated densities the
    /// table is inlined).
    std::string canonical() const;
    std::uint64_t hash() const;

    Tri is_unimodal() const;
    Tri psi_is_nondecreasing() const;

    /// psi(|xi|) at full accuracy.
    double psi(double xi) const;
    /// psi(|xi|) for inner quadrature loops. Identical to psi() for closed-form
    /// families; a cached log-log interpolant (relative error <= ~1e-9; for atomic
    /// measures up to ~2e-5 on xi in [1e3, 1e5], where atoms past the exact head
    /// ripple between table nodes) otherwise.
    double psi_fast(double xi) const;
    /// sup_{|u| <= xi} psi(u).
    double psi_star(double xi) const;
    /// inf{s >= 0 : psi*(s) >= u}.
    double psi_inverse(double u) const;
    /// The spec whose exponent is psi*; kernels computed from it are the
    /// maximal-function variants.
    SymbolSpec maximal() const;
    bool is_maximal() const;

    // Declared analytic knowledge of the family (never inferred numerically).
    /// Index of regular variation of psi at 0, if known.
    std::optional<double> index_at_zero() const;
    /// Power-law index of psi at infinity, if known.
    std::optional<double> index_at_infinity() const;
    bool finite_second_moment() const;
    bool has_closed_form() const;

    double gaussian_coeff() const;
    /// If psi is a finite sum of c |xi|^a terms, the pairs (c, a); empty otherwise.
    std::vector<std::pair<double, double>> stable_components() const;

    // Levy measure restricted to (0, inf).
    bool has_density() const;
    double levy_density(double x) const;
    /// Atoms with lo <= position < hi.
    std::vector<std::pair<double, double>> atoms_in(double lo, double hi) const;
    /// int_0^eps x^2 nu(dx).
    double small_jump_second_moment(double eps) const;
    /// nu([eps, inf)).
    double jump_tail_mass(double eps) const;
    /// Largest position with nu([x, inf)) > 0, or +inf.
    double jump_support_end() const;

    struct Impl;

private:
    explicit SymbolSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

enum class Regularity { regular, not_regular, indeterminate };
std::string to_string(Regularity r);

struct RegularityResult {
    Regularity status = Regularity::indeterminate;
    double value = 0.0;       // int_0^inf ds / (1 + psi(s)) when regular
    double truncation = 0.0;  // last abscissa examined
    double decay_index = 0.0; // fitted decay of dyadic block contributions
};

/// Point-regularity test int_0^inf 1/(1+psi) < inf via dyadic blocks [2^k, 2^{k+1}].
RegularityResult check_point_regularity(const SymbolSpec& spec, const QuadratureConfig& cfg = {});

struct DyadicResult {
    Regularity status = Regularity::indeterminate;
    double value = 0.0;
    double truncation = 0.0;
    double decay_index = 0.0;
};

/// int of f over [1, inf) (towards_infinity) or (0, 1] by dyadic blocks, with the
/// convergence classification of classify_blocks.
DyadicResult dyadic_integral(const std::function<double(double)>& f, bool towards_infinity,
                             const QuadratureConfig& cfg = {}, int max_blocks = 1000);

/// Classification of the dyadic block contributions c_k (k = 0, 1, ...).
/// Geometric decay or polynomial decay k^{-p} with p > 1.25 counts as convergent,
/// p < 0.9 (or non-decaying) as divergent. In between, a flat k c_k counts as divergent
/// and anything else as indeterminate.
/// `tail` receives the extrapolated sum beyond the last block when convergent.
Regularity classify_blocks(std::span<const double> blocks, double* tail, double* index);

enum class ScalingKind { wlsc, wusc };

struct ScalingGrid {
    double theta_min = 1e-4;
    double theta_max = 1e4;
    int theta_points = 64;
    int lambda_exp_max = 20;  // lambda = 2^j, j = 0..lambda_exp_max
    /// Doubling the theta points, widening the range by a decade each side and
    /// extending lambda to 2^{lambda_exp_max + 10}.
    ScalingGrid refined() const;
};

struct ScalingCertificate {
    ScalingKind kind = ScalingKind::wlsc;
    double index = 0.0;
    double coefficient = 0.0;          // gamma (WLSC) or rho (WUSC) on `grid`
    double refined_coefficient = 0.0;  // same on grid.refined()
    ScalingGrid grid;
    double max_violation = 0.0;        // relative drift of the coefficient under refinement
    double tolerance = 0.25;
    bool passing = false;
};

ScalingCertificate certify_scaling(const SymbolSpec& spec, ScalingKind kind, double index,
                                   const ScalingGrid& grid = {});

/// Spec from TOML text; relative table paths resolve against `base_dir`.
SymbolSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir = {});
SymbolSpec load_spec(const std::filesystem::path& path);

}  // namespace levyhit
