#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "fn3/cubic.hpp"
#include "fn3/error.hpp"
#include "fn3/mat3.hpp"

namespace fn3 {

// (c2, c1) of the characteristic polynomial x^3 - c2 x^2 + c1 x - 1 of a
// unimodular matrix: c2 = tr(M), c1 = tr(adj M) = tr(M^{-1}) sans inversion.
inline std::pair<cx, cx> char_poly(const Mat3& m) {
  return {trace(m), trace(adjugate(m))};
}

struct EigenTriple {
  std::array<cx, 3> values{};   // descending modulus, ties by argument
  Mat3 vectors;                 // columns; unit norm, pinned phase
  std::array<bool, 3> vector_ok{true, true, true};
};

// Phase convention: unit Euclidean norm, first component exceeding
// 1e-9 * max|v_i| made real positive. Deterministic across conjugations.
inline Vec3 normalize_eigenvector(Vec3 v) {
  const double n = norm2(v);
  if (n == 0.0) return v;
  v = (cx(1.0 / n)) * v;
  double mx = 0.0;
  for (int i = 0; i < 3; ++i) mx = std::max(mx, std::abs(v[i]));
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-9 * mx) {
      const cx phase = v[i] / std::abs(v[i]);
      v = (cx(1.0) / phase) * v;
      break;
    }
  }
  return v;
}

// Kernel vector of N for rank(N) = 2: the largest cross product of two rows
// is orthogonal (bilinearly) to both, hence spans the kernel.
inline Vec3 kernel_vector_rank2(const Mat3& n, bool* ok, double tol) {
  const Vec3 r0 = n.row(0), r1 = n.row(1), r2 = n.row(2);
  const Vec3 c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
  const double n01 = norm2(c01), n02 = norm2(c02), n12 = norm2(c12);
  double scale = 0.0;
  for (const auto& z : n.e) scale = std::max(scale, std::abs(z));
  const double best = std::max({n01, n02, n12});
  if (ok) *ok = best > tol * scale * scale;
  if (n01 >= n02 && n01 >= n12) return c01;
  if (n02 >= n12) return c02;
  return c12;
}

// Kernel vector for rank(N) <= 1: all row cross products vanish; any vector
// bilinearly orthogonal to the largest row works.
inline Vec3 kernel_vector_rank1(const Mat3& n) {
  Vec3 r = n.row(0);
  for (int i = 1; i < 3; ++i)
    if (norm2(n.row(i)) > norm2(r)) r = n.row(i);
  if (norm2(r) == 0.0) return {{1.0, 0.0, 0.0}};
  Vec3 cand{{0.0, 0.0, 0.0}};
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 e{};
    e[i] = 1.0;
    const Vec3 c = cross(r, e);
    if (norm2(c) > best) {
      best = norm2(c);
      cand = c;
    }
  }
  return cand;
}

// Sorted eigenvalues only; never throws. Classification code uses this
// directly so repeated spectra can still be inspected.
inline std::array<cx, 3> eigenvalues3(const Mat3& m) {
  const auto [t, tinv] = char_poly(m);
  return eigenvalues_from_traces(t, tinv);
}

inline double min_eigenvalue_separation(const std::array<cx, 3>& v) {
  return std::min({std::abs(v[0] - v[1]), std::abs(v[0] - v[2]),
                   std::abs(v[1] - v[2])});
}

inline EigenTriple eigen3(const Mat3& m, double tol = 1e-9) {
  const auto [t, tinv] = char_poly(m);
  const auto vals = eigenvalues_from_traces(t, tinv);
  // vanishing discriminant catches repeated spectra that root separation
  // misses: Cardano only resolves a double root to about sqrt(eps)
  if (min_eigenvalue_separation(vals) <= tol ||
      std::abs(trace_test_F(t, tinv)) <= 1e-12 * trace_test_F_scale(t, tinv))
    throw_precondition("RepeatedEigenvalues",
                       "eigenvalue separation below tolerance");

  EigenTriple et;
  et.values = vals;
  std::array<Vec3, 3> cols;
  for (int k = 0; k < 3; ++k) {
    Mat3 n = m;
    n(0, 0) -= vals[k];
    n(1, 1) -= vals[k];
    n(2, 2) -= vals[k];
    bool ok = true;
    Vec3 v = kernel_vector_rank2(n, &ok, 1e-12);
    if (!ok) {
      v = kernel_vector_rank1(n);
      et.vector_ok[k] = false;
    }
    cols[k] = normalize_eigenvector(v);
  }
  et.vectors = Mat3::from_columns(cols[0], cols[1], cols[2]);
  return et;
}

// geometric multiplicity of eigenvalue lam: 3 - rank(M - lam I), with the
// rank read off the adjugate: rank 2 <=> adj != 0, rank <= 1 <=> adj ~ 0.
inline int geometric_multiplicity(const Mat3& m, const cx& lam, double tol = 1e-8) {
  Mat3 n = m;
  n(0, 0) -= lam;
  n(1, 1) -= lam;
  n(2, 2) -= lam;
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(n) <= tol * scale) return 3;
  if (max_abs(adjugate(n)) <= tol * scale * scale) return 2;
  return 1;
}

}  // namespace fn3
