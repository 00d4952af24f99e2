#pragma once
// Boundary and internal parameters for positive-spectrum real pants: the
// (lambda, tau) boundary pairs, the internal (s, r) pair, the cross-ratio
// polynomials rho(s), and the closed forms for the two shape invariants.
//
// The printed rho_C repeats tau_A and the lambda_C/lambda_B ratio from rho_A,
// which breaks the cyclic pattern satisfied by rho_A and rho_B. The value
// forced by the boundary-trace relation tr(C) = lambda_C + tau_C is
//   rho_C = 1 + sqrt(lambda_B lambda_C / lambda_A) tau_C s
//             + (lambda_B / lambda_A) s^2,
// and only this value makes the closed-form shape invariants match matrices.
// Both values are exposed; consumers resolve to the relation value whenever
// the two disagree and report which path was used.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "fn3/cubic.hpp"
#include "fn3/error.hpp"
#include "fn3/trace_algebra.hpp"

namespace fn3 {

struct GoldmanParams {
  std::array<double, 3> lambda{};  // smallest eigenvalue per boundary, in (0,1)
  std::array<double, 3> tau{};     // sum of the two larger eigenvalues
  double s = 1.0;
  double r = 1.0;
};

// Strict mode enforces the boundary inequalities 0 < lambda < 1 and
// 2/sqrt(lambda) < tau < lambda + lambda^-2 together with s, r > 0.
// Permissive mode only requires the formulas to be evaluable
// (lambda > 0, s and r nonzero), for exploratory parameter sweeps.
inline void validate_goldman(const GoldmanParams& p, bool strict = true) {
  static const char* names[3] = {"first", "second", "third"};
  for (int i = 0; i < 3; ++i) {
    const double l = p.lambda[i], t = p.tau[i];
    if (!(l > 0.0)) {
      throw_precondition("ConstraintViolated",
                         std::string(names[i]) + " boundary needs lambda > 0");
    }
    if (strict && !(l < 1.0 && 2.0 / std::sqrt(l) < t && t < l + 1.0 / (l * l))) {
      throw_precondition("ConstraintViolated",
                         std::string(names[i]) +
                             " boundary violates 0 < lambda < 1, "
                             "2/sqrt(lambda) < tau < lambda + lambda^-2");
    }
  }
  if (strict ? !(p.s > 0.0) : (p.s == 0.0)) {
    throw_precondition("ConstraintViolated", "internal parameter s must be positive");
  }
  if (strict ? !(p.r > 0.0) : (p.r == 0.0)) {
    throw_precondition("ConstraintViolated", "internal parameter r must be positive");
  }
}

struct GoldmanRho {
  double rho_a = 0.0;
  double rho_b = 0.0;
  double rho_c_printed = 0.0;   // repeats tau_A and lambda_C/lambda_B
  double rho_c_relation = 0.0;  // forced by tr(C) = lambda_C + tau_C
  double rho_c = 0.0;           // resolved value used downstream
  bool printed_agrees = true;
};

inline GoldmanRho goldman_rho(const GoldmanParams& p) {
  const double la = p.lambda[0], lb = p.lambda[1], lc = p.lambda[2];
  const double ta = p.tau[0], tb = p.tau[1], tc = p.tau[2];
  const double s = p.s;
  GoldmanRho r;
  r.rho_a = 1.0 + std::sqrt(lc * la / lb) * ta * s + (lc / lb) * s * s;
  r.rho_b = 1.0 + std::sqrt(la * lb / lc) * tb * s + (la / lc) * s * s;
  r.rho_c_printed = 1.0 + std::sqrt(lb * lc / la) * ta * s + (lc / lb) * s * s;
  r.rho_c_relation = 1.0 + std::sqrt(lb * lc / la) * tc * s + (lb / la) * s * s;
  r.printed_agrees = std::abs(r.rho_c_printed - r.rho_c_relation) <=
                     1e-8 * (1.0 + std::abs(r.rho_c_printed) + std::abs(r.rho_c_relation));
  r.rho_c = r.printed_agrees ? r.rho_c_printed : r.rho_c_relation;
  return r;
}

// (lambda, tau) -> (tr, tr of inverse) for a positive triple
// 0 < lambda < mu < nu with mu + nu = tau and lambda mu nu = 1.
inline std::pair<cx, cx> goldman_boundary_to_traces(double lambda, double tau) {
  return {cx(lambda + tau), cx(1.0 / lambda + lambda * tau)};
}

// Inverse of the boundary map: solves the trace cubic, demands a positive
// real spectrum with three separated roots, returns (smallest, sum of rest).
inline std::pair<double, double> traces_to_goldman_boundary(const cx& t, const cx& tinv) {
  if (std::abs(t.imag()) > 1e-9 * (1.0 + std::abs(t)) ||
      std::abs(tinv.imag()) > 1e-9 * (1.0 + std::abs(tinv))) {
    throw_precondition("NotPositiveRealSpectrum", "traces must be real");
  }
  const auto roots = eigenvalues_from_traces(t, tinv);
  std::array<double, 3> x{};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(roots[i].imag()) > 1e-9 * (1.0 + std::abs(roots[i])) ||
        roots[i].real() <= 0.0) {
      throw_precondition("NotPositiveRealSpectrum",
                         "trace cubic has no positive real root triple");
    }
    x[i] = roots[i].real();
  }
  std::sort(x.begin(), x.end());
  if (x[1] - x[0] <= 1e-9 * (1.0 + x[1]) || x[2] - x[1] <= 1e-9 * (1.0 + x[2])) {
    throw_precondition("DegenerateJacobian",
                       "repeated eigenvalue: the (lambda, tau) chart is singular here");
  }
  return {x[0], x[1] + x[2]};
}

// Closed forms for the shape invariants in Goldman-Zhang parameters, using
// the resolved rho_C. The caller is responsible for parameter validation.
inline ShapePair zhang_sigma(const GoldmanParams& p) {
  const double la = p.lambda[0], lb = p.lambda[1], lc = p.lambda[2];
  const double ta = p.tau[0], tb = p.tau[1], tc = p.tau[2];
  const double s = p.s, r = p.r;
  const GoldmanRho rho = goldman_rho(p);
  const double big_l = std::sqrt(la * lb * lc);
  const double prod = rho.rho_a * rho.rho_b * rho.rho_c;
  ShapePair out;
  out.sigma_plus = (big_l + 1.0 / big_l) * s + (r + prod / r) / (s * s) +
                   (std::sqrt(lc / lb) * std::sqrt(la) * ta +
                    std::sqrt(la / lc) * std::sqrt(lb) * tb +
                    std::sqrt(lb / la) * std::sqrt(lc) * tc) /
                       s +
                   2.0 / (s * s);
  out.sigma_minus = (big_l + 1.0 / big_l) / s + (big_l * r + prod / (big_l * r)) / s +
                    (std::sqrt(lb / lc) * std::sqrt(la) * ta +
                     std::sqrt(lc / la) * std::sqrt(lb) * tb +
                     std::sqrt(la / lb) * std::sqrt(lc) * tc) *
                        s +
                    2.0 * s * s;
  return out;
}

}  // namespace fn3
