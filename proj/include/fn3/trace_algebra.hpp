#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "fn3/mat3.hpp"

namespace fn3 {

// Compensated accumulation; the 60+ term product polynomial below loses about
// three digits at |x| ~ 10 when summed naively.
struct KahanSum {
  cx s{0.0}, c{0.0};
  void add(const cx& v) {
    const cx y = v - c;
    const cx t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

enum class RootBranch { PlusBranch, MinusBranch };

inline const char* to_string(RootBranch b) {
  return b == RootBranch::PlusBranch ? "plus" : "minus";
}

// Trace octuple of a pair (A, B):
// x1 = tr A, x2 = tr B, x3 = tr AB, x4 = tr A^{-1}B,
// x5 = tr A^{-1}, x6 = tr B^{-1}, x7 = tr B^{-1}A^{-1}, x8 = tr B^{-1}A.
struct TraceCoordsX {
  std::array<cx, 8> v{};  // v[0] = x1
};

// Cyclically symmetric octuple of a triple (A, B, C), CBA = I:
// y1..y3 = tr A, tr B, tr C; y5..y7 = their inverse traces;
// y4 = sigma_plus, y8 = sigma_minus. root_choice labels one root of the
// commutator quadratic as tr[A,B]; meaningful only when the roots differ.
struct TraceCoordsY {
  std::array<cx, 8> v{};  // v[0] = y1
  RootBranch root_choice = RootBranch::PlusBranch;
};

struct ShapePair {
  cx sigma_plus{}, sigma_minus{};
};

// X^2 - S X + P whose roots are tr[A,B] and tr[B,A]. plus_root is the
// lexicographically greater root by (Re, Im).
struct CommutatorQuadratic {
  cx S{}, P{};
  cx plus_root{}, minus_root{};

  cx root(RootBranch b) const {
    return b == RootBranch::PlusBranch ? plus_root : minus_root;
  }
};

inline bool lex_ge(const cx& a, const cx& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() >= b.imag();
}

// Roots of X^2 - S X + P labeled lexicographically; the larger-modulus root
// is computed first so the quotient form avoids cancellation.
inline std::pair<cx, cx> quadratic_roots_lex(const cx& S, const cx& P) {
  const cx d = std::sqrt(S * S - 4.0 * P);
  const cx big = (std::abs(S + d) >= std::abs(S - d)) ? (S + d) * 0.5 : (S - d) * 0.5;
  const cx other = (std::abs(big) > 0.0) ? P / big : cx(0.0);
  if (lex_ge(big, other)) return {big, other};
  return {other, big};
}

// S0, P0: the two-generator trace relation coefficients. Terms are grouped
// and summed exactly in their defining order with compensated accumulation.
inline std::pair<cx, cx> lawton_raw(const TraceCoordsX& xc) {
  const cx x1 = xc.v[0], x2 = xc.v[1], x3 = xc.v[2], x4 = xc.v[3];
  const cx x5 = xc.v[4], x6 = xc.v[5], x7 = xc.v[6], x8 = xc.v[7];

  KahanSum S;
  S.add(x1 * x5);
  S.add(x2 * x6);
  S.add(x3 * x7);
  S.add(x4 * x8);
  S.add(x1 * x2 * x5 * x6);
  S.add(-x1 * x2 * x7);
  S.add(-x1 * x4 * x6);
  S.add(-x2 * x5 * x8);
  S.add(-x3 * x5 * x6);
  S.add(cx(-3.0));

  KahanSum P;
  P.add(x1 * x1 * x2 * x5 * x5 * x6);
  P.add(x1 * x2 * x2 * x5 * x6 * x6);
  P.add(x1 * x1 * x2 * x2 * x3);
  P.add(x5 * x5 * x6 * x6 * x7);
  P.add(x1 * x1 * x6 * x6 * x8);
  P.add(x2 * x2 * x4 * x5 * x5);
  P.add(-x1 * x1 * x2 * x5 * x7);
  P.add(-x1 * x3 * x5 * x5 * x6);
  P.add(-x1 * x1 * x4 * x5 * x6);
  P.add(-x1 * x2 * x5 * x5 * x8);
  P.add(-x2 * x2 * x5 * x6 * x8);
  P.add(-x1 * x2 * x4 * x6 * x6);
  P.add(-x1 * x2 * x2 * x6 * x7);
  P.add(-x2 * x3 * x5 * x6 * x6);
  P.add(-x1 * x1 * x1 * x2 * x6);
  P.add(-x2 * x5 * x5 * x5 * x6);
  P.add(-x1 * x2 * x2 * x2 * x5);
  P.add(-x1 * x6 * x6 * x6 * x5);
  P.add(-x1 * x2 * x3 * x4 * x5);
  P.add(-x1 * x5 * x6 * x7 * x8);
  P.add(-x1 * x2 * x3 * x6 * x8);
  P.add(-x2 * x4 * x5 * x6 * x7);
  P.add(x1 * x1 * x2 * x8);
  P.add(x4 * x5 * x5 * x6);
  P.add(x1 * x1 * x3 * x6);
  P.add(x2 * x5 * x5 * x7);
  P.add(x1 * x1 * x4 * x7);
  P.add(x3 * x5 * x5 * x8);
  P.add(x1 * x2 * x2 * x4);
  P.add(x5 * x6 * x6 * x8);
  P.add(x2 * x2 * x3 * x5);
  P.add(x1 * x6 * x6 * x7);
  P.add(x2 * x2 * x7 * x8);
  P.add(x3 * x4 * x6 * x6);
  P.add(x3 * x3 * x4 * x5);
  P.add(x1 * x7 * x7 * x8);
  P.add(x3 * x3 * x6 * x8);
  P.add(x2 * x4 * x7 * x7);
  P.add(x1 * x3 * x4 * x4);
  P.add(x5 * x7 * x8 * x8);
  P.add(x4 * x4 * x6 * x7);
  P.add(x2 * x3 * x8 * x8);
  P.add(-2.0 * x1 * x2 * x3 * x3);
  P.add(-2.0 * x5 * x6 * x7 * x7);
  P.add(-2.0 * x2 * x4 * x4 * x5);
  P.add(-2.0 * x1 * x6 * x8 * x8);
  P.add(x1 * x2 * x5 * x6);
  P.add(x1 * x3 * x5 * x7);
  P.add(x1 * x4 * x5 * x8);
  P.add(x2 * x3 * x6 * x7);
  P.add(x2 * x4 * x6 * x8);
  P.add(x3 * x4 * x7 * x8);
  P.add(x1 * x1 * x1);
  P.add(x2 * x2 * x2);
  P.add(x3 * x3 * x3);
  P.add(x4 * x4 * x4);
  P.add(x5 * x5 * x5);
  P.add(x6 * x6 * x6);
  P.add(x7 * x7 * x7);
  P.add(x8 * x8 * x8);
  P.add(-3.0 * x1 * x3 * x8);
  P.add(-3.0 * x4 * x5 * x7);
  P.add(-3.0 * x2 * x3 * x4);
  P.add(-3.0 * x6 * x7 * x8);
  P.add(3.0 * x1 * x4 * x6);
  P.add(3.0 * x2 * x5 * x8);
  P.add(3.0 * x1 * x2 * x7);
  P.add(3.0 * x3 * x5 * x6);
  P.add(-6.0 * x1 * x5);
  P.add(-6.0 * x2 * x6);
  P.add(-6.0 * x3 * x7);
  P.add(-6.0 * x4 * x8);
  P.add(cx(9.0));

  return {S.s, P.s};
}

// S(y), P(y): the symmetrized coefficients; identical to lawton_raw after the
// x <-> y substitution below (property-tested).
inline CommutatorQuadratic lawton_sym(const TraceCoordsY& yc) {
  const cx y1 = yc.v[0], y2 = yc.v[1], y3 = yc.v[2], y4 = yc.v[3];
  const cx y5 = yc.v[4], y6 = yc.v[5], y7 = yc.v[6], y8 = yc.v[7];

  KahanSum S;
  S.add(y1 * y5);
  S.add(y2 * y6);
  S.add(y3 * y7);
  S.add(y4 * y8);
  S.add(-y1 * y2 * y3);
  S.add(-y5 * y6 * y7);
  S.add(cx(-3.0));

  KahanSum P;
  P.add(y1 * y2 * y3 * y5 * y6 * y7);
  P.add(y1 * y1 * y2 * y2 * y7);
  P.add(y3 * y5 * y5 * y6 * y6);
  P.add(y1 * y1 * y3 * y3 * y6);
  P.add(y2 * y5 * y5 * y7 * y7);
  P.add(y2 * y2 * y3 * y3 * y5);
  P.add(y1 * y6 * y6 * y7 * y7);
  P.add(y1 * y2 * y5 * y6);
  P.add(y2 * y3 * y6 * y7);
  P.add(y1 * y3 * y5 * y7);
  P.add(-2.0 * y1 * y2 * y7 * y7);
  P.add(-2.0 * y3 * y3 * y5 * y6);
  P.add(-2.0 * y1 * y3 * y6 * y6);
  P.add(-2.0 * y2 * y2 * y5 * y7);
  P.add(-2.0 * y2 * y3 * y5 * y5);
  P.add(-2.0 * y1 * y1 * y6 * y7);
  P.add(y1 * y1 * y1);
  P.add(y2 * y2 * y2);
  P.add(y3 * y3 * y3);
  P.add(y5 * y5 * y5);
  P.add(y6 * y6 * y6);
  P.add(y7 * y7 * y7);
  P.add(3.0 * y1 * y2 * y3);
  P.add(3.0 * y5 * y6 * y7);
  P.add(-6.0 * y1 * y5);
  P.add(-6.0 * y2 * y6);
  P.add(-6.0 * y3 * y7);
  P.add(y1 * y2 * y4 * y5 * y7);
  P.add(y1 * y3 * y4 * y6 * y7);
  P.add(y2 * y3 * y4 * y5 * y6);
  P.add(y1 * y2 * y2 * y4);
  P.add(y4 * y5 * y5 * y6);
  P.add(y1 * y1 * y3 * y4);
  P.add(y4 * y5 * y7 * y7);
  P.add(y2 * y3 * y3 * y4);
  P.add(y4 * y6 * y6 * y7);
  P.add(y1 * y3 * y5 * y6 * y8);
  P.add(y2 * y3 * y5 * y7 * y8);
  P.add(y1 * y2 * y6 * y7 * y8);
  P.add(y5 * y6 * y6 * y8);
  P.add(y1 * y1 * y2 * y8);
  P.add(y5 * y5 * y7 * y8);
  P.add(y1 * y3 * y3 * y8);
  P.add(y6 * y7 * y7 * y8);
  P.add(y2 * y2 * y3 * y8);
  P.add((y4 * y4 - 3.0 * y8) * (y1 * y7 + y2 * y5 + y3 * y6));
  P.add((y8 * y8 - 3.0 * y4) * (y1 * y6 + y2 * y7 + y3 * y5));
  P.add(y4 * y8 * (y1 * y5 + y2 * y6 + y3 * y7 - 6.0));
  P.add(y4 * y4 * y4);
  P.add(y8 * y8 * y8);
  P.add(cx(9.0));

  CommutatorQuadratic q;
  q.S = S.s;
  q.P = P.s;
  std::tie(q.plus_root, q.minus_root) = quadratic_roots_lex(q.S, q.P);
  return q;
}

// sigma_plus = tr(A^{-1}B) - tr(A^{-1}) tr(B), sigma_minus with roles swapped;
// inverses via adjugate (unimodular input).
inline ShapePair shape_invariants(const Mat3& a, const Mat3& b) {
  const Mat3 ai = adjugate(a), bi = adjugate(b);
  ShapePair s;
  s.sigma_plus = trace(ai * b) - trace(ai) * trace(b);
  s.sigma_minus = trace(bi * a) - trace(bi) * trace(a);
  return s;
}

inline TraceCoordsX coords_x(const Mat3& a, const Mat3& b) {
  const Mat3 ai = adjugate(a), bi = adjugate(b);
  TraceCoordsX x;
  x.v[0] = trace(a);
  x.v[1] = trace(b);
  x.v[2] = trace(a * b);
  x.v[3] = trace(ai * b);
  x.v[4] = trace(ai);
  x.v[5] = trace(bi);
  x.v[6] = trace(bi * ai);
  x.v[7] = trace(bi * a);
  return x;
}

inline cx trace_commutator(const Mat3& a, const Mat3& b) {
  return trace(a * b * adjugate(a) * adjugate(b));
}

// x3 = y7, x7 = y3, x4 = y4 + y2 y5, x8 = y8 + y1 y6, identity elsewhere.
inline TraceCoordsX x_from_y(const TraceCoordsY& y) {
  TraceCoordsX x;
  x.v[0] = y.v[0];
  x.v[1] = y.v[1];
  x.v[2] = y.v[6];
  x.v[3] = y.v[3] + y.v[1] * y.v[4];
  x.v[4] = y.v[4];
  x.v[5] = y.v[5];
  x.v[6] = y.v[2];
  x.v[7] = y.v[7] + y.v[0] * y.v[5];
  return x;
}

inline TraceCoordsY y_from_x(const TraceCoordsX& x,
                             RootBranch branch = RootBranch::PlusBranch) {
  TraceCoordsY y;
  y.v[0] = x.v[0];
  y.v[1] = x.v[1];
  y.v[2] = x.v[6];
  y.v[3] = x.v[3] - x.v[1] * x.v[4];
  y.v[4] = x.v[4];
  y.v[5] = x.v[5];
  y.v[6] = x.v[2];
  y.v[7] = x.v[7] - x.v[0] * x.v[5];
  y.root_choice = branch;
  return y;
}

// Octuple of a pair, with root_choice set to the branch nearest tr[A,B].
inline TraceCoordsY coords_y(const Mat3& a, const Mat3& b) {
  TraceCoordsY y = y_from_x(coords_x(a, b));
  const CommutatorQuadratic q = lawton_sym(y);
  const cx trk = trace_commutator(a, b);
  y.root_choice = (std::abs(trk - q.plus_root) <= std::abs(trk - q.minus_root))
                      ? RootBranch::PlusBranch
                      : RootBranch::MinusBranch;
  return y;
}

// cyclic relabeling (A,B,C) -> (B,C,A); sigma_plus/minus are invariant
inline TraceCoordsY cyclic_permute_y(const TraceCoordsY& y) {
  TraceCoordsY p = y;
  p.v[0] = y.v[1];
  p.v[1] = y.v[2];
  p.v[2] = y.v[0];
  p.v[4] = y.v[5];
  p.v[5] = y.v[6];
  p.v[6] = y.v[4];
  return p;
}

// On the self-paired locus (y_i = y_{i+4}) the branch discriminant S^2 - 4P
// factors as (t + a + b + c - 3)^2 T2(t); this returns the factor data.
struct BranchFactorization {
  cx linear_root{};                 // t = 3 - a - b - c
  std::pair<cx, cx> t2_roots{};     // a+b+c+1 +- 2 sqrt((a+1)(b+1)(c+1))
  cx comm_at_linear{};              // tr[A,B] on the linear factor
  std::pair<cx, cx> comm_at_t2{};   // tr[A,B] at each T2 root
};

inline cx t2_evaluate(const cx& a, const cx& b, const cx& c, const cx& t) {
  return t * t - 2.0 * (a + b + c + 1.0) * t - 4.0 * a * b * c + a * a + b * b +
         c * c - 2.0 * (a * b + b * c + a * c + a + b + c) - 3.0;
}

inline BranchFactorization branch_factorization(const cx& a, const cx& b, const cx& c) {
  BranchFactorization f;
  f.linear_root = 3.0 - a - b - c;
  const cx rad = 2.0 * std::sqrt((a + 1.0) * (b + 1.0) * (c + 1.0));
  const cx center = a + b + c + 1.0;
  f.t2_roots = {center + rad, center - rad};
  f.comm_at_linear = -a * b * c + a * a + b * b + c * c + a * b + b * c + a * c -
                     3.0 * (a + b + c) + 3.0;
  const cx prod = (a + 1.0) * (b + 1.0) * (c + 1.0);
  f.comm_at_t2 = {center * f.t2_roots.first + prod - 1.0,
                  center * f.t2_roots.second + prod - 1.0};
  return f;
}

enum class ReducibilityVerdict { ReducibleBranch, IrreducibleBranch, NotSelfPaired };

inline const char* to_string(ReducibilityVerdict v) {
  switch (v) {
    case ReducibilityVerdict::ReducibleBranch: return "ReducibleBranch";
    case ReducibilityVerdict::IrreducibleBranch: return "IrreducibleBranch";
    case ReducibilityVerdict::NotSelfPaired: return "NotSelfPaired";
  }
  return "?";
}

// Self-paired octuples with sigma = 3 - trA - trB - trC lie on the reducible
// factor of the branch locus; tolerance is absolute on O(10) traces.
inline ReducibilityVerdict reducibility_test(const TraceCoordsY& y, double tol = 1e-8) {
  for (int i = 0; i < 4; ++i)
    if (std::abs(y.v[i] - y.v[i + 4]) > tol) return ReducibilityVerdict::NotSelfPaired;
  const cx target = 3.0 - y.v[0] - y.v[1] - y.v[2];
  return (std::abs(y.v[3] - target) <= tol) ? ReducibilityVerdict::ReducibleBranch
                                            : ReducibilityVerdict::IrreducibleBranch;
}

// Two-generator trace relations in SL(2): tr(A^{-1}B) and tr[A,B] from
// (tr A, tr B, tr AB).
struct FrickeSL2 {
  cx tr_ainv_b{}, tr_comm{};
};

inline FrickeSL2 fricke_sl2(const cx& x, const cx& y, const cx& z) {
  FrickeSL2 f;
  f.tr_ainv_b = x * y - z;
  f.tr_comm = x * x + y * y + z * z - 2.0 - x * y * z;
  return f;
}

}  // namespace fn3
