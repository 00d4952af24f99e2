#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "fn3/mat3.hpp"

namespace fn3 {

// Roots of x^3 + c2 x^2 + c1 x + c0 over C: depressed-cubic Cardano with a
// deterministic cube-root branch, then one Newton polish per root.
inline std::array<cx, 3> cubic_roots(const cx& c2, const cx& c1, const cx& c0) {
  const cx shift = c2 / 3.0;
  const cx p = c1 - c2 * c2 / 3.0;
  const cx q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

  std::array<cx, 3> roots;
  const double scale = std::max({std::abs(p), std::abs(q), 1.0});
  if (std::abs(p) <= 1e-14 * scale && std::abs(q) <= 1e-14 * scale) {
    roots = {-shift, -shift, -shift};
  } else {
    // t = w - p/(3w), w^3 = -q/2 + sqrt(q^2/4 + p^3/27)
    cx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cx u = -q / 2.0 + disc;
    if (std::abs(u) < 1e-3 * std::abs(q)) u = -q / 2.0 - disc;  // avoid cancellation
    const cx w = std::pow(u, 1.0 / 3.0);
    const cx omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
      cx wk = w;
      if (k == 1) wk = w * omega;
      if (k == 2) wk = w * omega * omega;
      cx t = (std::abs(wk) > 0) ? wk - p / (3.0 * wk) : cx(0.0);
      roots[k] = t - shift;
    }
  }

  for (auto& r : roots) {
    for (int iter = 0; iter < 2; ++iter) {
      const cx f = ((r + c2) * r + c1) * r + c0;
      const cx df = (3.0 * r + 2.0 * c2) * r + c1;
      if (std::abs(df) < 1e-300) break;
      const cx step = f / df;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  return roots;
}

// Descending modulus; ties broken by descending argument in (-pi, pi].
inline void sort_eigenvalues(std::array<cx, 3>& v) {
  std::sort(v.begin(), v.end(), [](const cx& a, const cx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-14 * (ma + mb)) return ma > mb;
    return std::arg(a) > std::arg(b);
  });
}

// Eigenvalues of a unimodular matrix from its trace pair, sorted:
// char poly x^3 - t x^2 + tinv x - 1.
inline std::array<cx, 3> eigenvalues_from_traces(const cx& t, const cx& tinv) {
  auto r = cubic_roots(-t, tinv, -1.0);
  sort_eigenvalues(r);
  return r;
}

// F(x, y) = x^2 y^2 - 4(x^3 + y^3) + 18 x y - 27 is the discriminant of the
// trace cubic x^3 - x^2 t + x tinv - 1: it vanishes exactly on repeated
// spectra. F(3.5, 3.5) = (1)^2 (1/2)^2 (3/2)^2 = 0.5625 for spectrum (2,1,1/2).
inline cx trace_test_F(const cx& x, const cx& y) {
  return x * x * y * y - 4.0 * (x * x * x + y * y * y) + 18.0 * x * y - 27.0;
}

// term-magnitude scale of F for relative vanishing tests
inline double trace_test_F_scale(const cx& x, const cx& y) {
  const double ax = std::abs(x), ay = std::abs(y);
  return ax * ax * ay * ay + 4.0 * (ax * ax * ax + ay * ay * ay) + 18.0 * ax * ay + 27.0;
}

// Repeated root of the trace cubic, assuming the discriminant vanishes: a
// repeated root also kills the derivative 3x^2 - 2 t x + tinv, whose roots
// stay well-conditioned where Cardano loses half its digits.
inline cx repeated_root_from_traces(const cx& t, const cx& tinv) {
  const cx disc = std::sqrt(t * t - 3.0 * tinv);
  const cx big = (std::abs(t + disc) >= std::abs(t - disc)) ? (t + disc) / 3.0
                                                            : (t - disc) / 3.0;
  const cx other = (std::abs(big) > 0) ? tinv / (3.0 * big) : cx(0.0);
  const auto pval = [&](const cx& x) { return ((x - t) * x + tinv) * x - 1.0; };
  return (std::abs(pval(big)) <= std::abs(pval(other))) ? big : other;
}

}  // namespace fn3
