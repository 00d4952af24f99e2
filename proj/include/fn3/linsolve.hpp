#pragma once
// Dense complex linear solves for the small square systems used by the
// builders (7x7 Newton steps, 4x4 cross-ratio recovery).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "fn3/mat3.hpp"

namespace fn3 {

// Gaussian elimination with partial pivoting, in place; returns false when a
// pivot falls below tiny * (largest initial entry), i.e. the system is
// numerically singular. On success rhs holds the solution.
template <std::size_t N>
inline bool solve_linear(std::array<std::array<cx, N>, N>& a, std::array<cx, N>& rhs,
                         double tiny = 1e-13) {
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0.0) return false;

  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[col][col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double v = std::abs(a[r][col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= tiny * scale) return false;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(rhs[piv], rhs[col]);
    }
    const cx inv = 1.0 / a[col][col];
    for (std::size_t r = col + 1; r < N; ++r) {
      const cx f = a[r][col] * inv;
      if (f == cx(0.0)) continue;
      for (std::size_t j = col; j < N; ++j) a[r][j] -= f * a[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = N; i-- > 0;) {
    cx acc = rhs[i];
    for (std::size_t j = i + 1; j < N; ++j) acc -= a[i][j] * rhs[j];
    rhs[i] = acc / a[i][i];
  }
  return true;
}

}  // namespace fn3
