#pragma once

// Frozen reference values from tests/oracles/derive.py (mpmath/scipy, routes
// independent of the library). Regenerate with `python3 tests/oracles/derive.py`.

namespace ref {

// K(x) = (1/pi) int (1 - cos xs)/psi(s) ds
inline constexpr double stable15_K_1 = 0.79788456080286535;
inline constexpr double stable15_K_2p5 = 1.26156626101008;
inline constexpr double stable12_K_1 = 1.7622403312499399;  // closed form for |xi|^a
inline constexpr double cauchy_bm_K_1 = 0.29303405245935632;
inline constexpr double cauchy_bm_K_10 = 0.91968934725208208;

// u^lambda(0), K^lambda(x)
inline constexpr double stable15_u0_2 = 0.61099094977715672;
inline constexpr double cauchy_bm_u0_1 = 0.38490017945975051;
inline constexpr double stable15_Klambda_1_3 = 0.49610208759062027;

// symbols
inline constexpr double log_perturbed_psi_1 = 5.315983136243027;
inline constexpr double log_perturbed_psi_30 = 760.66224789915245;
inline constexpr double atomic15_psi_0p5 = 0.81418461563771163;  // direct sum of 1e7 atoms + tail
inline constexpr double atomic15_psi_10 = 154.26497140114725;

// renewal function
inline constexpr double stable15_renewal_constant = 1.0880652521310173;
inline constexpr double cauchy_bm_V_1 = 0.70513135764931352;  // Stehfest at 60 digits, degrees 24 and 32

// asymptotics
inline constexpr double asymptotic_factor_1p5 = 0.95932419758571826;

// point tails P^x(T_0 > t) at x = t = 1 (Talbot at 25 digits)
inline constexpr double stable15_point_tail_1_1 = 0.74961466617877565;
inline constexpr double cauchy_bm_point_tail_1_1 = 0.51927817310667939;
inline constexpr double brownian_tail_1_1 = 0.52049987781304652;  // erf(x / (2 sqrt t)) for psi = xi^2

// free transition law
inline constexpr double stable15_density_1_1 = 0.20203815960784008;
inline constexpr double stable15_cdf_1_2 = 0.67264303201371278;

}  // namespace ref
