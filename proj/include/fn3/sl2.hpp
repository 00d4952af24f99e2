#pragma once
// SL(2) constructions and the squaring embedding into the orthogonal group of
// the antidiagonal form J inside SL(3,C). The embedding doubles eigenvalue
// exponents: an SL(2) element with eigenvalues l, 1/l maps to an element with
// eigenvalues l^2, 1, 1/l^2, so every image matrix has trace equal to inverse
// trace and fixed eigenvalue 1.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fn3/error.hpp"
#include "fn3/mat2.hpp"
#include "fn3/mat3.hpp"
#include "fn3/trace_algebra.hpp"

namespace fn3 {

// Antidiagonal quadratic form; J^2 = I, real signature (2,1). Images of the
// squaring embedding satisfy M^T J M = J (transpose, not conjugate transpose).
inline Mat3 form_j() {
  Mat3 j;
  j(0, 2) = 1.0;
  j(1, 1) = 1.0;
  j(2, 0) = 1.0;
  return j;
}

// Vector-level squaring map; sends an eigenvector of a 2x2 matrix to an
// eigenvector of its embedded image with squared eigenvalue.
inline Vec3 phi_vec(const cx& w1, const cx& w2) {
  const double r2 = 1.4142135623730950488;
  return Vec3{-w1 * w1, r2 * w1 * w2, w2 * w2};
}

// Squaring embedding of a unimodular 2x2 matrix. Kernel {+I, -I}; the image
// has determinant 1 and preserves form_j under transpose.
inline Mat3 phi_star(const Mat2& m) {
  const double r2 = 1.4142135623730950488;
  const cx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  Mat3 r;
  r(0, 0) = a * a;
  r(0, 1) = -r2 * a * b;
  r(0, 2) = -b * b;
  r(1, 0) = -r2 * a * c;
  r(1, 1) = a * d + b * c;
  r(1, 2) = r2 * b * d;
  r(2, 0) = -c * c;
  r(2, 1) = r2 * c * d;
  r(2, 2) = d * d;
  return r;
}

struct SL2Pants {
  Mat2 ahat;
  Mat2 bhat;
  bool reducible = false;  // commutator trace equals 2 within 1e-9
  cx commutator_trace{};
};

// Normal-form pair realizing prescribed traces tr(ahat) = x, tr(bhat) = y,
// tr(ahat*bhat) = z. ahat is the companion matrix of t^2 - x t + 1; the
// off-diagonal parameter of bhat is the larger-modulus root of
// zeta^2 - z zeta + 1 (tie broken by larger principal argument), so the pair
// is deterministic in (x, y, z).
inline SL2Pants sl2_pants_from_traces(const cx& x, const cx& y, const cx& z) {
  SL2Pants p;
  p.ahat(0, 0) = x;
  p.ahat(0, 1) = -1.0;
  p.ahat(1, 0) = 1.0;
  p.ahat(1, 1) = 0.0;

  const cx d = std::sqrt(z * z - 4.0);
  const cx rp = (z + d) * 0.5, rm = (z - d) * 0.5;
  cx zeta;
  if (std::abs(std::abs(rp) - std::abs(rm)) <= 1e-14 * (std::abs(rp) + std::abs(rm) + 1.0)) {
    zeta = (std::arg(rp) >= std::arg(rm)) ? rp : rm;
  } else if (std::abs(rp) > std::abs(rm)) {
    zeta = rp;
  } else {
    zeta = rm;
  }
  p.bhat(0, 0) = 0.0;
  p.bhat(0, 1) = zeta;
  p.bhat(1, 0) = -1.0 / zeta;
  p.bhat(1, 1) = y;

  const Mat2 comm = p.ahat * p.bhat * inverse_unimodular(p.ahat) * inverse_unimodular(p.bhat);
  p.commutator_trace = trace(comm);
  p.reducible = std::abs(p.commutator_trace - 2.0) <= 1e-9;
  return p;
}

struct ShapeResult {
  cx sigma;     // shared value of the two shape invariants
  cx tr_comm;   // commutator trace on the same branch
};

namespace detail {

// Principal square root with the branch cut rejected: inputs exactly on the
// negative real axis have no preferred root without a connecting path.
inline cx principal_factor_root(const cx& f, const char* label) {
  if (f.imag() == 0.0 && f.real() < 0.0) {
    throw_precondition("DomainError", std::string(label) +
                       " + 1 lies on the negative real axis; the square-root branch "
                       "is undefined without a continuation path");
  }
  return std::sqrt(f);
}

inline ShapeResult shape_from_center(const cx& center, const cx& root) {
  ShapeResult r;
  r.sigma = center + 2.0 * root;
  r.tr_comm = (center + root) * (center + root) - 1.0;
  return r;
}

}  // namespace detail

// Shape invariant and commutator trace of the embedded triple with boundary
// traces (a, b, c), on the branch that is positive real for real a, b, c > 3:
// sigma = a+b+c+1 + 2 sqrt((a+1)(b+1)(c+1)) with factor-wise principal roots.
inline ShapeResult fuchsian_shape(const cx& a, const cx& b, const cx& c) {
  const cx root = detail::principal_factor_root(a + 1.0, "first trace") *
                  detail::principal_factor_root(b + 1.0, "second trace") *
                  detail::principal_factor_root(c + 1.0, "third trace");
  return detail::shape_from_center(a + b + c + 1.0, root);
}

// Both roots of X^2 - 2(a+b+c+1) X - 4abc + a^2+b^2+c^2 - 2(ab+bc+ca)
// - 2(a+b+c) - 3, lexicographically greater first. These are the two possible
// shared shape-invariant values over the boundary traces (a, b, c).
inline std::pair<cx, cx> shape_quadratic_roots(const cx& a, const cx& b, const cx& c) {
  const cx center = a + b + c + 1.0;
  const cx rad = 2.0 * std::sqrt((a + 1.0) * (b + 1.0) * (c + 1.0));
  const cx r1 = center + rad, r2 = center - rad;
  if (lex_ge(r1, r2)) return {r1, r2};
  return {r2, r1};
}

// Analytic continuation of fuchsian_shape along a polyline of (a, b, c)
// triples. The first vertex fixes the factor-wise positive branch; the square
// root is then tracked continuously (32 internal samples per segment), so a
// loop around the branch locus {some trace = -1} lands on the other root.
// Returns one result per vertex.
inline std::vector<ShapeResult> shape_continuation(const std::vector<std::array<cx, 3>>& path) {
  if (path.empty()) {
    throw_input("EmptyPath", "shape continuation needs at least one (a,b,c) vertex");
  }
  std::vector<ShapeResult> out;
  out.reserve(path.size());

  const cx root0 = detail::principal_factor_root(path[0][0] + 1.0, "first trace") *
                   detail::principal_factor_root(path[0][1] + 1.0, "second trace") *
                   detail::principal_factor_root(path[0][2] + 1.0, "third trace");
  cx w = root0;
  out.push_back(detail::shape_from_center(path[0][0] + path[0][1] + path[0][2] + 1.0, w));

  const int substeps = 32;
  for (std::size_t k = 1; k < path.size(); ++k) {
    for (int i = 1; i <= substeps; ++i) {
      const double t = double(i) / double(substeps);
      std::array<cx, 3> q;
      for (int j = 0; j < 3; ++j) q[j] = (1.0 - t) * path[k - 1][j] + t * path[k][j];
      const cx p = (q[0] + 1.0) * (q[1] + 1.0) * (q[2] + 1.0);
      const double scale = (1.0 + std::abs(q[0] + 1.0)) * (1.0 + std::abs(q[1] + 1.0)) *
                           (1.0 + std::abs(q[2] + 1.0));
      if (std::abs(p) <= 1e-13 * scale) {
        throw_precondition("DomainError",
                           "continuation path passes through the branch locus");
      }
      const cx s = std::sqrt(p);
      w = (std::abs(s - w) <= std::abs(-s - w)) ? s : -s;
    }
    out.push_back(detail::shape_from_center(path[k][0] + path[k][1] + path[k][2] + 1.0, w));
  }
  return out;
}

}  // namespace fn3
