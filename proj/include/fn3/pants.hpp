#pragma once
// Pants constructors. build_pants realizes a trace octuple plus commutator
// root choice as an explicit triple (A, B, C) with CBA = I: A is pinned to
// the diagonal of its descending-modulus spectrum and B is solved by a
// gauge-fixed damped Newton iteration on seven trace constraints. The
// reducible block family and the positive-spectrum real (Goldman) family are
// constructed in closed form.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fn3/classify.hpp"
#include "fn3/cubic.hpp"
#include "fn3/eigen3.hpp"
#include "fn3/error.hpp"
#include "fn3/goldman.hpp"
#include "fn3/linsolve.hpp"
#include "fn3/mat2.hpp"
#include "fn3/mat3.hpp"
#include "fn3/rng.hpp"
#include "fn3/sl2.hpp"
#include "fn3/trace_algebra.hpp"

namespace fn3 {

struct PantsRep {
  Mat3 A, B, C;
  TraceCoordsY coords;           // cached; matches recomputed traces within 1e-8
  bool irreducible_flag = true;  // numerical confidence flag, not a certificate
};

struct SolverReport {
  double residual = 0.0;  // 2-norm of the seven constraint defects
  int iterations = 0;     // Newton steps in the successful attempt
  int restarts = 0;       // attempts consumed before the successful one
  std::string gauge;      // normalization slice the solution lives in
};

// Reducibility scan in the eigenframe of the first argument: with simple
// spectrum, any invariant line or plane of the pair must be a coordinate
// axis or coordinate plane of that frame, so it shows up as a zero column
// or zero row pattern. Returns true when no pattern is found (or when the
// frame is unavailable, since the scan cannot certify anything then).
inline bool irreducible_scan(const Mat3& a, const Mat3& b, double tol = 1e-6) {
  Mat3 bf;
  try {
    const EigenTriple et = eigen3(a);
    if (std::abs(det(et.vectors)) < 1e-8) return true;
    bf = inverse(et.vectors) * b * et.vectors;
  } catch (const Error&) {
    return true;
  }
  const double thresh = tol * (1.0 + max_abs(bf));
  for (int k = 0; k < 3; ++k) {
    double col = 0.0, row = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (i == k) continue;
      col = std::max(col, std::abs(bf(i, k)));
      row = std::max(row, std::abs(bf(k, i)));
    }
    if (col <= thresh || row <= thresh) return false;
  }
  return true;
}

inline TraceCoordsY pants_coords(const PantsRep& rep) { return coords_y(rep.A, rep.B); }

namespace detail {

struct GaugeSlice {
  std::array<std::array<int, 2>, 2> fixed;  // entries pinned to 1
  const char* description;
};

inline const GaugeSlice& primary_gauge() {
  static const GaugeSlice g{{{{0, 1}, {1, 2}}}, "b12 = b23 = 1 (torus slice)"};
  return g;
}

inline const GaugeSlice& fallback_gauge() {
  static const GaugeSlice g{{{{0, 2}, {1, 0}}}, "b13 = b21 = 1 (fallback slice)"};
  return g;
}

inline std::array<std::pair<int, int>, 7> free_entries(const GaugeSlice& g) {
  std::array<std::pair<int, int>, 7> out{};
  std::size_t n = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const bool pinned = (i == g.fixed[0][0] && j == g.fixed[0][1]) ||
                          (i == g.fixed[1][0] && j == g.fixed[1][1]);
      if (!pinned) out[n++] = {i, j};
    }
  return out;
}

struct PantsTargets {
  cx tr_b, tr_adj_b, tr_ab, tr_adj_ba, tr_ainv_b, tr_binv_a;
};

inline PantsTargets targets_from_y(const TraceCoordsY& y) {
  PantsTargets t;
  t.tr_b = y.v[1];
  t.tr_adj_b = y.v[5];
  t.tr_ab = y.v[6];
  t.tr_adj_ba = y.v[2];
  t.tr_ainv_b = y.v[3] + y.v[4] * y.v[1];
  t.tr_binv_a = y.v[7] + y.v[5] * y.v[0];
  return t;
}

inline std::array<cx, 7> pants_residual(const Mat3& a, const Mat3& ainv, const Mat3& b,
                                        const PantsTargets& t) {
  const Mat3 adjb = adjugate(b);
  const Mat3 ba = b * a;
  const cx trba = trace(ba);
  std::array<cx, 7> f;
  f[0] = det(b) - 1.0;
  f[1] = trace(b) - t.tr_b;
  f[2] = trace(adjb) - t.tr_adj_b;
  f[3] = trba - t.tr_ab;
  f[4] = 0.5 * (trba * trba - trace(ba * ba)) - t.tr_adj_ba;
  f[5] = trace(ainv * b) - t.tr_ainv_b;
  f[6] = trace(adjb * a) - t.tr_binv_a;
  return f;
}

inline double residual_norm(const std::array<cx, 7>& f) {
  double s = 0.0;
  for (const cx& v : f) s += std::norm(v);
  return std::sqrt(s);
}

struct NewtonOutcome {
  bool converged = false;
  bool singular = false;
  int iterations = 0;
  double residual = 0.0;
};

// Damped Newton on the seven free entries of B, Armijo backtracking on the
// squared residual; the Jacobian is assembled from the exact entry
// derivatives of each trace constraint.
inline NewtonOutcome newton_pants(const Mat3& a, const Mat3& ainv, Mat3& b,
                                  const PantsTargets& t,
                                  const std::array<std::pair<int, int>, 7>& vars) {
  NewtonOutcome out;
  const cx tra = trace(a);
  std::array<cx, 7> f = pants_residual(a, ainv, b, t);
  double r = residual_norm(f);
  int it = 0;
  for (; it < 120 && r > 1e-12; ++it) {
    const Mat3 adjb = adjugate(b);
    const Mat3 ba = b * a, ab = a * b;
    const Mat3 aba = a * ba;
    const cx trb = trace(b), trba = trace(ba);
    std::array<std::array<cx, 7>, 7> jac;
    for (int k = 0; k < 7; ++k) {
      const int i = vars[k].first, j = vars[k].second;
      const cx d = (i == j) ? 1.0 : 0.0;
      jac[0][k] = adjb(j, i);
      jac[1][k] = d;
      jac[2][k] = trb * d - b(j, i);
      jac[3][k] = a(j, i);
      jac[4][k] = trba * a(j, i) - aba(j, i);
      jac[5][k] = ainv(j, i);
      jac[6][k] = ba(j, i) + ab(j, i) - trba * d - trb * a(j, i) + (trb * d - b(j, i)) * tra;
    }
    std::array<cx, 7> step;
    for (int m = 0; m < 7; ++m) step[m] = -f[m];
    if (!solve_linear<7>(jac, step)) {
      out.singular = true;
      break;
    }
    bool accepted = false;
    double scale = 1.0;
    for (int h = 0; h < 40; ++h) {
      Mat3 bn = b;
      for (int k = 0; k < 7; ++k) bn(vars[k].first, vars[k].second) += scale * step[k];
      const auto fn = pants_residual(a, ainv, bn, t);
      const double rn = residual_norm(fn);
      if (rn < (1.0 - 0.25 * scale) * r) {
        b = bn;
        f = fn;
        r = rn;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;  // stalled under full backtracking
  }
  out.iterations = it;
  out.residual = r;
  out.converged = (r <= 1e-10);
  return out;
}

// Conjugate b by a torus element so the two slice entries become exactly 1.
// Fails when a slice entry is too small to scale against.
inline bool gauge_scale(Mat3& b, const GaugeSlice& g) {
  const double floor_ = 1e-8 * (1.0 + max_abs(b));
  std::array<cx, 3> u{1.0, 0.0, 0.0};
  std::array<bool, 3> known{true, false, false};
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& fe : g.fixed) {
      const int i = fe[0], j = fe[1];
      const cx v = b(i, j);
      if (std::abs(v) < floor_) return false;
      if (known[i] && !known[j]) {
        u[j] = u[i] / v;  // v * u_j / u_i = 1
        known[j] = true;
      } else if (known[j] && !known[i]) {
        u[i] = v * u[j];
        known[i] = true;
      }
    }
  }
  if (!known[1] || !known[2]) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) *= u[j] / u[i];
  for (const auto& fe : g.fixed) b(fe[0], fe[1]) = 1.0;
  return true;
}

// Diagonalize a0 (descending-modulus order, matching the pinned boundary
// matrix) and transport b0 into that frame.
inline bool transport_to_frame(const Mat3& a0, const Mat3& b0, Mat3& b_out) {
  try {
    const EigenTriple et = eigen3(a0);
    if (std::abs(det(et.vectors)) < 1e-10) return false;
    b_out = inverse(et.vectors) * b0 * et.vectors;
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Warm start on the self-paired locus: synthesize an SL(2) pair whose
// squared-embedding image has the requested boundary traces and shape
// invariant, then transport its B into the diagonal frame.
inline bool fuchsian_start(const TraceCoordsY& y, Mat3& b_out) {
  const cx a = y.v[0], b = y.v[1], c = y.v[2];
  const cx sigma = 0.5 * (y.v[3] + y.v[7]);
  const cx w = 0.5 * (a + b + c + 1.0 - sigma);  // = product of SL(2) traces
  const cx x = std::sqrt(a + 1.0), yy = std::sqrt(b + 1.0);
  if (std::abs(x * yy) < 1e-8) return false;
  const auto pair2 = sl2_pants_from_traces(x, yy, w / (x * yy));
  return transport_to_frame(phi_star(pair2.ahat), phi_star(pair2.bhat), b_out);
}

// Warm start on the reducible branch: the dual (inverse-transpose) of an
// offset block pair carries the invariant line onto the middle eigenvector,
// the only zero pattern compatible with the fallback slice.
inline bool reducible_start(const TraceCoordsY& y, Mat3& b_out) {
  const auto pair2 =
      sl2_pants_from_traces(y.v[0] - 1.0, y.v[1] - 1.0, y.v[6] - 1.0);
  const Mat3 a0 = block_embed(pair2.ahat, cx(0.31), cx(-0.47));
  const Mat3 b0 = block_embed(pair2.bhat, cx(-0.29), cx(0.53));
  return transport_to_frame(transpose(adjugate(a0)), transpose(adjugate(b0)), b_out);
}

inline std::uint64_t mix_seed(int seed, int attempt) {
  std::uint64_t h = static_cast<std::uint64_t>(seed) * 0x9E3779B97F4A7C15ull;
  h ^= static_cast<std::uint64_t>(attempt + 1) * 0xBF58476D1CE4E5B9ull;
  h ^= h >> 31;
  return h * 0x94D049BB133111EBull + 1u;
}

}  // namespace detail

// Solve for the pants triple realizing y on the branch y.root_choice.
// A is diag of the roots of x^3 - y1 x^2 + y5 x - 1 in descending-modulus
// order; B is found by multi-start damped Newton in a torus gauge slice
// (with a fallback slice for zero patterns the primary slice cannot reach);
// among converged solutions the first whose commutator trace matches the
// selected quadratic root wins, in deterministic seed order.
inline std::pair<PantsRep, SolverReport> build_pants(const TraceCoordsY& y, int seed) {
  const auto tt = strongly_loxodromic_by_trace(y.v[0], y.v[4]);
  if (!tt.strongly_loxodromic) {
    throw_precondition("BoundaryNotLoxodromic",
                       tt.indeterminate
                           ? "trace test indeterminate for the first boundary curve"
                           : "first boundary curve is not strongly loxodromic");
  }

  const auto evals = eigenvalues_from_traces(y.v[0], y.v[4]);
  const Mat3 a = Mat3::diag(evals[0], evals[1], evals[2]);
  const Mat3 ainv = adjugate(a);
  const detail::PantsTargets targets = detail::targets_from_y(y);

  const CommutatorQuadratic q = lawton_sym(y);
  const cx root_want =
      (y.root_choice == RootBranch::PlusBranch) ? q.plus_root : q.minus_root;
  const cx root_other =
      (y.root_choice == RootBranch::PlusBranch) ? q.minus_root : q.plus_root;
  const bool double_root =
      std::abs(q.plus_root - q.minus_root) <=
      1e-9 * (1.0 + std::abs(q.plus_root) + std::abs(q.minus_root));

  bool self_paired = true;
  for (int k = 0; k < 4; ++k) {
    const double sc = 1.0 + std::abs(y.v[k]) + std::abs(y.v[k + 4]);
    if (std::abs(y.v[k] - y.v[k + 4]) > 1e-6 * sc) self_paired = false;
  }
  const bool reducible_branch =
      (reducibility_test(y) == ReducibilityVerdict::ReducibleBranch);

  // Attempt schedule: kind 0 = Fuchsian warm start, 1 = reducible warm
  // start, 2 = random start. Reducible tuples live only in the fallback
  // slice, so it goes first for them.
  struct Plan {
    const detail::GaugeSlice* gauge;
    int kind;
  };
  std::vector<Plan> plans;
  const auto& pg = detail::primary_gauge();
  const auto& fg = detail::fallback_gauge();
  if (reducible_branch) {
    plans.push_back({&fg, 1});
    for (int k = 0; k < 31; ++k) plans.push_back({&fg, 2});
    for (int k = 0; k < 32; ++k) plans.push_back({&pg, 2});
  } else {
    if (self_paired) plans.push_back({&pg, 0});
    while (plans.size() < 40) plans.push_back({&pg, 2});
    if (self_paired) plans.push_back({&fg, 0});
    while (plans.size() < 64) plans.push_back({&fg, 2});
  }

  int converged_wrong = 0;
  bool any_nonsingular = false;
  for (std::size_t attempt = 0; attempt < plans.size(); ++attempt) {
    const Plan& plan = plans[attempt];
    const auto vars = detail::free_entries(*plan.gauge);
    Mat3 b;
    if (plan.kind == 2) {
      Rng rng(detail::mix_seed(seed, static_cast<int>(attempt)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = rng.cgauss();
      for (const auto& fe : plan.gauge->fixed) b(fe[0], fe[1]) = 1.0;
    } else {
      const bool ok = (plan.kind == 0) ? detail::fuchsian_start(y, b)
                                       : detail::reducible_start(y, b);
      if (!ok || !detail::gauge_scale(b, *plan.gauge)) continue;
    }

    const auto outcome = detail::newton_pants(a, ainv, b, targets, vars);
    if (!outcome.singular) any_nonsingular = true;
    if (!outcome.converged) continue;

    const cx trk = trace_commutator(a, b);
    const bool match = double_root ||
                       (std::abs(trk - root_want) <= 1e-6 * (1.0 + std::abs(root_want)) &&
                        std::abs(trk - root_want) <= std::abs(trk - root_other));
    if (!match) {
      ++converged_wrong;
      continue;
    }

    PantsRep rep;
    rep.A = a;
    rep.B = b;
    rep.C = inverse_unimodular(b * a);
    rep.coords = coords_y(rep.A, rep.B);
    rep.coords.root_choice = y.root_choice;
    rep.irreducible_flag = irreducible_scan(rep.A, rep.B);
    SolverReport report;
    report.residual = outcome.residual;
    report.iterations = outcome.iterations;
    report.restarts = static_cast<int>(attempt);
    report.gauge = plan.gauge->description;
    return {rep, report};
  }

  if (converged_wrong > 0) {
    throw_precondition("RootChoiceUnrealizable",
                       "every converged solution carries the other commutator root");
  }
  if (!any_nonsingular) {
    throw_precondition("GaugeDegenerate",
                       "Jacobian singular in both gauge slices for every start");
  }
  throw_convergence("NoConvergence", "restart budget exhausted without a solution");
}

// Block-diagonal family with upper-right offset vectors: traces are blind to
// the offsets, so every member shares the coordinates of the offset-zero
// triple. C completes the product to the identity.
inline PantsRep build_reducible_pants(const std::array<cx, 3>& sl2_traces,
                                      const std::array<cx, 2>& offset_a,
                                      const std::array<cx, 2>& offset_b) {
  const auto pair2 = sl2_pants_from_traces(sl2_traces[0], sl2_traces[1], sl2_traces[2]);
  PantsRep rep;
  rep.A = block_embed(pair2.ahat, offset_a[0], offset_a[1]);
  rep.B = block_embed(pair2.bhat, offset_b[0], offset_b[1]);
  rep.C = inverse_unimodular(rep.B * rep.A);
  rep.coords = coords_y(rep.A, rep.B);
  rep.irreducible_flag = false;  // invariant plane by construction
  return rep;
}

struct GoldmanInfo {
  GoldmanRho rho;
  std::string rho_path;               // "printed" or "relation"
  double printed_trace_defect = 0.0;  // |tr C - lambda_C - tau_C| under printed rho_C
  double cba_residual = 0.0;
};

// Positive-spectrum real pants from boundary and internal parameters,
// instantiating the printed matrix family. rho_C is resolved through the
// boundary-trace relation whenever the printed formula disagrees with it;
// the relation residual of the printed value is reported either way.
inline PantsRep goldman_pants(const GoldmanParams& p, GoldmanInfo* info = nullptr,
                              bool permissive = false) {
  validate_goldman(p, !permissive);
  const GoldmanRho rho = goldman_rho(p);
  const double la = p.lambda[0], lb = p.lambda[1], lc = p.lambda[2];
  const double s = p.s, r = p.r;

  const double a1 = la, a2 = std::sqrt(lc / (la * lb)) / s, a3 = std::sqrt(lb / (la * lc)) * s;
  const double b1 = std::sqrt(lc / (la * lb)) * s, b2 = lb, b3 = std::sqrt(la / (lb * lc)) / s;
  const double g1 = std::sqrt(lb / (la * lc)) / s, g2 = std::sqrt(la / (lb * lc)) * s, g3 = lc;

  const double ia2 = r / rho.rho_b, ia3 = 2.0;
  const double ib1 = rho.rho_b * rho.rho_c / r, ib3 = 2.0;
  const double ic1 = rho.rho_b / 2.0, ic2 = rho.rho_a / 2.0;

  PantsRep rep;
  rep.A(0, 0) = a1;
  rep.A(0, 1) = a1 * ia2 + g1 * ia3 * ic2;
  rep.A(0, 2) = g1 * ia3;
  rep.A(1, 1) = -b1 + g1 * ib3 * ic2;
  rep.A(1, 2) = g1 * ib3;
  rep.A(2, 1) = -g1 * ic2;
  rep.A(2, 2) = -g1;

  rep.B(0, 0) = -a2;
  rep.B(0, 2) = -a2 * ia3;
  rep.B(1, 0) = a2 * ib1;
  rep.B(1, 1) = b2;
  rep.B(1, 2) = b2 * ib3 + a2 * ia3 * ib1;
  rep.B(2, 0) = a2 * ic1;
  rep.B(2, 2) = -g2 + a2 * ia3 * ic1;

  rep.C(0, 0) = -a3 + b3 * ia2 * ib1;
  rep.C(0, 1) = b3 * ia2;
  rep.C(1, 0) = -b3 * ib1;
  rep.C(1, 1) = -b3;
  rep.C(2, 0) = g3 * ic1 + b3 * ib1 * ic2;
  rep.C(2, 1) = b3 * ic2;
  rep.C(2, 2) = g3;

  const double res = distance(rep.C * rep.B * rep.A, Mat3::identity());
  const double trace_defect =
      std::abs(trace(rep.C) - cx(p.lambda[2] + p.tau[2]));
  if (res > 1e-9 || trace_defect > 1e-8 * (1.0 + std::abs(p.lambda[2] + p.tau[2]))) {
    throw_precondition("RelationResidual",
                       "built triple violates CBA = I or the boundary trace relation "
                       "even after rho_C resolution");
  }
  if (info) {
    info->rho = rho;
    info->rho_path = rho.printed_agrees ? "printed" : "relation";
    info->printed_trace_defect = std::abs(b3 * (rho.rho_c_printed - rho.rho_c_relation));
    info->cba_residual = res;
  }
  rep.coords = coords_y(rep.A, rep.B);
  rep.irreducible_flag = irreducible_scan(rep.A, rep.B);
  return rep;
}

}  // namespace fn3
