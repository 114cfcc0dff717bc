#pragma once

#include <cstddef>

namespace levyhit::detail {

/// In place: v in (0, 1) -> -log(v).
void uniform_to_exponential(double* v, std::size_t n);

/// Box-Muller on paired uniforms: out[i] = sqrt(-2 log a[i]) cos(2 pi b[i]).
void uniform_to_normal(const double* a, const double* b, double* out, std::size_t n);

/// a in (0, 1) -> pi (a - 1/2), in place.
void uniform_to_angle(double* a, std::size_t n);

}  // namespace levyhit::detail
