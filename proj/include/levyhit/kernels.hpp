#pragma once

// Potential-theoretic kernels of a symmetric Levy process:
//   K(x)       = (1/pi) int_0^inf (1 - cos xs) / psi(s) ds
//   K^l(x)     = (1/pi) int_0^inf (1 - cos xs) / (l + psi(s)) ds
//   u^l(x)     = (1/pi) int_0^inf cos(xs) / (l + psi(s)) ds
//   kappa      = pi / int_0^inf ds / psi(s)   (0 when the integral diverges)
//   G(x, y)    = K(x) + K(y) - K(y - x) - kappa K(x) K(y)   (Green function of R \ {0})

#include <complex>
#include <optional>

#include "levyhit/quadrature.hpp"
#include "levyhit/symbols.hpp"

namespace levyhit {

struct KernelValue {
    double value = 0.0;
    double achieved_tol = 0.0;      // estimated absolute error
    double truncation_point = 0.0;  // largest abscissa used by the tail scheme
    bool converged = true;
};

/// Selects the exponent the kernel is built from: psi itself or its maximal function
/// psi* (the latter gives the tilde-kernels).
enum class KernelSymbol { psi, psi_star };

KernelValue kernel_K(const SymbolSpec& spec, double x, const QuadratureConfig& cfg = {},
                     KernelSymbol sym = KernelSymbol::psi);

KernelValue kernel_K_lambda(const SymbolSpec& spec, double x, double lambda,
                            const QuadratureConfig& cfg = {}, KernelSymbol sym = KernelSymbol::psi);

KernelValue potential_u_lambda(const SymbolSpec& spec, double x, double lambda,
                               const QuadratureConfig& cfg = {}, KernelSymbol sym = KernelSymbol::psi);

/// E^x exp(-lambda T_0) = u^lambda(x) / u^lambda(0).
double hitting_time_laplace(const SymbolSpec& spec, double x, double lambda, const QuadratureConfig& cfg = {});

/// Analytic continuation in lambda (complex lambda off the negative half-line).
std::complex<double> kernel_K_lambda_complex(const SymbolSpec& spec, double x, std::complex<double> lambda,
                                             const QuadratureConfig& cfg = {}, double* error = nullptr);
std::complex<double> potential_u0_complex(const SymbolSpec& spec, std::complex<double> lambda,
                                          const QuadratureConfig& cfg = {}, double* error = nullptr);

enum class KappaStatus { transient, recurrent, indeterminate };
std::string to_string(KappaStatus s);

struct KappaResult {
    double value = 0.0;  // kappa; 0 when recurrent
    KappaStatus status = KappaStatus::indeterminate;
    double integral = 0.0;  // int_0^inf ds / psi when finite
    Regularity at_zero = Regularity::indeterminate;
    Regularity at_infinity = Regularity::indeterminate;
};

/// Cached per spec after the first call.
KappaResult transience_kappa(const SymbolSpec& spec, const QuadratureConfig& cfg = {});

struct GreenValue {
    double value = 0.0;
    double achieved_tol = 0.0;
    bool clamped = false;  // a small negative value from quadrature noise was set to 0
};

GreenValue green_point_complement(const SymbolSpec& spec, double x, double y, const QuadratureConfig& cfg = {});

struct KernelTailBand {
    double integral = 0.0;  // I(x) = int_{1/x}^inf ds / psi*(s)
    double a = 1.0;         // comparability coefficient psi >= a psi*
    double lower = 0.0;     // (2/pi^3) I(x)
    double upper = 0.0;     // (10/(pi a)) I(x)
    std::optional<double> scaling_value;  // 1/(x psi(1/x)) under WLSC(alpha > 1)
};

/// I(x) with the two-sided band that contains K(x) whenever psi >= a psi*.
KernelTailBand kernel_tail_integral(const SymbolSpec& spec, double x, double a, bool wlsc_above_one = false,
                                    const QuadratureConfig& cfg = {});

}  // namespace levyhit
