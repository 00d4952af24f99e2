// Real-form detection and unitary-stratum coordinates.
//
// A pants or surface representation may preserve extra structure inside
// SL(3,C), and the trace coordinates see it:
//   SO3C      self-paired traces, symmetric sigma, repeated commutator roots,
//             sigma off the reducible linear branch
//   Reducible self-paired traces with sigma on the linear branch
//   SL3R      all eight coordinates real
//   SU21      inverse traces conjugate to the forward ones
// detect_pants runs these tests on one octuple; acosta_scan lifts the last
// two to sampled words of an assembled surface group. The Hermitian machinery
// (su_check, cross_ratios, pp_linear_system) coordinatizes the unitary
// stratum for the antidiagonal form J of signature (2,1).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fn3/classify.hpp"
#include "fn3/eigen3.hpp"
#include "fn3/error.hpp"
#include "fn3/linsolve.hpp"
#include "fn3/mat3.hpp"
#include "fn3/rng.hpp"
#include "fn3/sl2.hpp"
#include "fn3/surface.hpp"
#include "fn3/trace_algebra.hpp"

namespace fn3 {

enum class SubgroupTag { SO3C, SL3R, SU21, Reducible, Generic };

inline const char* subgroup_name(SubgroupTag t) {
  switch (t) {
    case SubgroupTag::SO3C: return "SO3C";
    case SubgroupTag::SL3R: return "SL3R";
    case SubgroupTag::SU21: return "SU21";
    case SubgroupTag::Reducible: return "Reducible";
    default: return "Generic";
  }
}

// pass records whether the named condition holds at the tolerance in force;
// value is the scale-relative residual that was compared.
struct NamedResidual {
  std::string name;
  double value = 0.0;
  bool pass = false;
};

struct SubgroupVerdict {
  SubgroupTag tag = SubgroupTag::Generic;
  std::vector<SubgroupTag> passing;  // every detected stratum, strongest first
  std::vector<NamedResidual> evidence;
  std::string note;
};

// Trace-octuple test battery. Residuals are scale-relative so one tol spans
// magnitudes. Precedence: SO3C, Reducible, SL3R, SU21; the verdict keeps the
// first passing tag and lists the rest.
inline SubgroupVerdict detect_pants(const TraceCoordsY& y, double tol = 1e-8) {
  double pairing = 0.0;
  for (int i = 0; i < 3; ++i) {
    pairing = std::max(pairing,
                       std::abs(y.v[i] - y.v[i + 4]) / (1.0 + std::abs(y.v[i])));
  }
  const double sigma_sym =
      std::abs(y.v[3] - y.v[7]) / (1.0 + std::abs(y.v[3]));

  // repeated commutator-trace roots show up as a vanishing discriminant
  const CommutatorQuadratic q = lawton_sym(y);
  const double qs = 1.0 + std::abs(q.S);
  const double disc_rel = std::abs(q.S * q.S - 4.0 * q.P) / (qs * qs);

  const cx linear = 3.0 - y.v[0] - y.v[1] - y.v[2];
  const double lin_off =
      std::abs(y.v[3] - linear) / (1.0 + std::abs(linear));

  double realness = 0.0;
  for (const cx& z : y.v) {
    realness = std::max(realness, std::abs(z.imag()) / (1.0 + std::abs(z)));
  }

  double conj_pair = 0.0;
  for (int i = 0; i < 4; ++i) {
    conj_pair = std::max(conj_pair, std::abs(y.v[i + 4] - std::conj(y.v[i])) /
                                        (1.0 + std::abs(y.v[i])));
  }

  SubgroupVerdict out;
  out.evidence = {
      {"trace_self_pairing", pairing, pairing <= tol},
      {"sigma_symmetry", sigma_sym, sigma_sym <= tol},
      {"commutator_quadratic_discriminant", disc_rel, disc_rel <= tol},
      {"sigma_off_linear_branch", lin_off, lin_off > tol},
      {"sigma_on_linear_branch", lin_off, lin_off <= tol},
      {"coordinates_real", realness, realness <= tol},
      {"inverse_traces_conjugate", conj_pair, conj_pair <= tol},
  };
  const bool self_paired = pairing <= tol && sigma_sym <= tol;
  if (self_paired && disc_rel <= tol && lin_off > tol)
    out.passing.push_back(SubgroupTag::SO3C);
  if (self_paired && lin_off <= tol)
    out.passing.push_back(SubgroupTag::Reducible);
  if (realness <= tol) out.passing.push_back(SubgroupTag::SL3R);
  if (conj_pair <= tol) out.passing.push_back(SubgroupTag::SU21);
  out.tag = out.passing.empty() ? SubgroupTag::Generic : out.passing.front();
  return out;
}

// Residual of the isometry condition M^* J M = J for the antidiagonal
// Hermitian form of signature (2,1).
inline double su_residual(const Mat3& m) {
  const Mat3 j = form_j();
  return distance(conj_transpose(m) * j * m, j);
}

inline bool su_check(const Mat3& m, double tol = 1e-8) {
  return su_residual(m) <= tol;
}

// Projection onto the isometry Lie algebra: X^* J + J X = 0 and tr X = 0.
// The skew part has purely imaginary trace, removed along i*I.
inline Mat3 su_project(const Mat3& h) {
  const Mat3 j = form_j();
  Mat3 s = cx(0.5) * (h - j * conj_transpose(h) * j);
  const cx shift(0.0, trace(s).imag() / 3.0);
  return s - shift * Mat3::identity();
}

namespace detail {

// Scaling-and-squaring Taylor exponential; the argument is halved until its
// largest entry is at most 1/4, where 18 terms reach full precision.
inline Mat3 expm(const Mat3& m) {
  Mat3 a = m;
  int squarings = 0;
  while (max_abs(a) > 0.25) {
    a = cx(0.5) * a;
    ++squarings;
  }
  Mat3 sum = Mat3::identity();
  Mat3 term = Mat3::identity();
  for (int k = 1; k <= 18; ++k) {
    term = cx(1.0 / k) * (term * a);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace detail

// Haar-free sampler of J-isometries: exponentiate a random algebra element.
inline Mat3 random_su21(Rng& rng, double spread = 0.8) {
  Mat3 h;
  for (auto& z : h.e) z = spread * rng.cgauss();
  return detail::expm(su_project(h));
}

// Loxodromic J-isometry with spectrum (l, conj(l)/l, 1/conj(l)), |l| > 1,
// conjugated by a random isometry so eigenvectors are in general position.
inline Mat3 random_su21_loxodromic(Rng& rng, double min_modulus = 1.4,
                                   double max_modulus = 2.2) {
  const cx l = std::polar(rng.uniform(min_modulus, max_modulus),
                          rng.uniform(-3.0, 3.0));
  const Mat3 d = Mat3::diag(l, std::conj(l) / l, 1.0 / std::conj(l));
  const Mat3 v = random_su21(rng);
  return v * d * inverse_unimodular(v);
}

// Hermitian pairing <z, w> = w^* J z: linear in z, conjugate-linear in w.
inline cx herm_pairing(const Vec3& z, const Vec3& w) {
  return std::conj(w[0]) * z[2] + std::conj(w[1]) * z[1] +
         std::conj(w[2]) * z[0];
}

struct CrossRatios {
  cx X1{}, X2{}, X3{};
  bool degenerate = false;  // shared fixed points (e.g. B = A) pin X1 at 1
};

namespace detail {

inline void check_strongly_loxodromic(const Mat3& m, const char* name) {
  const TraceTestResult t =
      strongly_loxodromic_by_trace(trace(m), trace(adjugate(m)));
  if (!t.strongly_loxodromic || t.indeterminate) {
    throw_precondition("NotLoxodromic",
                       std::string(name) + ": trace test rejects strong loxodromy");
  }
}

inline Vec3 check_j_null(const Vec3& v, const char* name) {
  if (std::abs(herm_pairing(v, v)) > 1e-8) {
    throw_precondition("NotNullFixedPoints",
                       std::string(name) + ": fixed vector is not null for J");
  }
  return v;
}

inline bool parallel_unit_vectors(const Vec3& a, const Vec3& b) {
  return norm2(cross(a, b)) <= 1e-8;
}

inline cx pairing_quotient(const cx& n1, const cx& n2, const cx& d1,
                           const cx& d2) {
  const cx den = d1 * d2;
  if (std::abs(den) <= 1e-13)
    throw_precondition("IllConditioned", "cross-ratio denominator vanishes");
  return n1 * n2 / den;
}

}  // namespace detail

// Triple of Hermitian cross-ratios attached to the attractive/repelling
// eigenvector pairs (a, r) of two strongly loxodromic J-isometries:
//   X1 = <rA,aB><rB,aA> / (<rB,aB><rA,aA>)
//   X2 = <aA,aB><rB,rA> / (<rB,aB><aA,rA>)
//   X3 = <aB,aA><rB,rA> / (<rB,aA><aB,rA>)
// Each quotient uses every eigenvector once in numerator and denominator, so
// it is exactly invariant under rescaling; the invariance is re-verified on
// rescaled copies as a conditioning guard.
inline CrossRatios cross_ratios(const Mat3& a, const Mat3& b) {
  detail::check_strongly_loxodromic(a, "A");
  detail::check_strongly_loxodromic(b, "B");
  const EigenTriple ea = eigen3(a);
  const EigenTriple eb = eigen3(b);
  for (int i = 0; i < 3; ++i) {
    if (!ea.vector_ok[i] || !eb.vector_ok[i])
      throw_precondition("IllConditioned", "eigenvector extraction failed");
  }
  const Vec3 aa = detail::check_j_null(ea.vectors.col(0), "A attractive");
  const Vec3 ra = detail::check_j_null(ea.vectors.col(2), "A repelling");
  const Vec3 ab = detail::check_j_null(eb.vectors.col(0), "B attractive");
  const Vec3 rb = detail::check_j_null(eb.vectors.col(2), "B repelling");

  const auto compute = [](const Vec3& aav, const Vec3& rav, const Vec3& abv,
                          const Vec3& rbv) {
    CrossRatios c;
    c.X1 = detail::pairing_quotient(herm_pairing(rav, abv), herm_pairing(rbv, aav),
                                    herm_pairing(rbv, abv), herm_pairing(rav, aav));
    c.X2 = detail::pairing_quotient(herm_pairing(aav, abv), herm_pairing(rbv, rav),
                                    herm_pairing(rbv, abv), herm_pairing(aav, rav));
    c.X3 = detail::pairing_quotient(herm_pairing(abv, aav), herm_pairing(rbv, rav),
                                    herm_pairing(rbv, aav), herm_pairing(abv, rav));
    return c;
  };

  CrossRatios out = compute(aa, ra, ab, rb);
  out.degenerate = detail::parallel_unit_vectors(aa, ab) &&
                   detail::parallel_unit_vectors(ra, rb);

  const CrossRatios scaled = compute(cx(0.6, -0.8) * aa, cx(-0.28, 0.96) * ra,
                                     cx(0.8, 0.6) * ab, cx(0.96, 0.28) * rb);
  const double drift = std::max({std::abs(scaled.X1 - out.X1) / (1.0 + std::abs(out.X1)),
                                 std::abs(scaled.X2 - out.X2) / (1.0 + std::abs(out.X2)),
                                 std::abs(scaled.X3 - out.X3) / (1.0 + std::abs(out.X3))});
  if (drift > 1e-9)
    throw_precondition("IllConditioned", "cross-ratio quotients drift under rescaling");
  return out;
}

// Traces of the four mixed words feeding the linear reconstruction.
struct PPTraces {
  cx tr_ba{};         // tr(BA)
  cx tr_ainv_binv{};  // tr(A^-1 B^-1)
  cx tr_ainv_b{};     // tr(A^-1 B)
  cx tr_binv_a{};     // tr(B^-1 A)
};

// Reconstructs (X1, X2) from eigenvalues and mixed traces by solving a 4x4
// linear system in (X1, conj X1, X2, conj X2) treated as independent
// unknowns. Each row substitutes plain or inverted eigenvalue triples
// (xa, ya, za) for A and (xb, yb, zb) for B into one pattern:
//   tr - (xa+za) yb - ya (xb+zb) + ya yb =
//     (za-ya)(zb-yb) X1 + (xa-ya)(xb-yb) conj(X1)
//   + (xa-ya)(zb-yb) X2 + (za-ya)(xb-yb) conj(X2)
// The determinant is Delta = prod of squared pairwise eigenvalue gaps; the
// conjugate slots must agree with the direct ones or the trace data is
// inconsistent with a common isometry group.
inline std::pair<cx, cx> pp_linear_system(const EigenTriple& ea,
                                          const EigenTriple& eb,
                                          const PPTraces& tr) {
  const cx la = ea.values[0], ma = ea.values[1], na = ea.values[2];
  const cx lb = eb.values[0], mb = eb.values[1], nb = eb.values[2];
  const cx ga = (la - na) * (la - ma) * (na - ma);
  const cx gb = (lb - nb) * (lb - mb) * (nb - mb);
  const cx delta = ga * ga * gb * gb;
  if (std::abs(delta) <= 1e-12) {
    throw_precondition("DegenerateDelta",
                       "eigenvalue gaps too small: |Delta| <= 1e-12");
  }

  std::array<std::array<cx, 4>, 4> mat{};
  std::array<cx, 4> rhs{};
  const auto fill_row = [&](int r, const std::array<cx, 3>& A,
                            const std::array<cx, 3>& B, const cx& t) {
    const cx xa = A[0], ya = A[1], za = A[2];
    const cx xb = B[0], yb = B[1], zb = B[2];
    mat[r] = {{(za - ya) * (zb - yb), (xa - ya) * (xb - yb),
               (xa - ya) * (zb - yb), (za - ya) * (xb - yb)}};
    rhs[r] = t - (xa + za) * yb - ya * (xb + zb) + ya * yb;
  };
  const std::array<cx, 3> A{{la, ma, na}}, Ai{{1.0 / la, 1.0 / ma, 1.0 / na}};
  const std::array<cx, 3> B{{lb, mb, nb}}, Bi{{1.0 / lb, 1.0 / mb, 1.0 / nb}};
  fill_row(0, A, B, tr.tr_ba);
  fill_row(1, Ai, Bi, tr.tr_ainv_binv);
  fill_row(2, Ai, B, tr.tr_ainv_b);
  fill_row(3, A, Bi, tr.tr_binv_a);

  if (!solve_linear<4>(mat, rhs))
    throw_precondition("DegenerateDelta", "linear system pivoting failed");

  if (std::abs(rhs[1] - std::conj(rhs[0])) > 1e-7 ||
      std::abs(rhs[3] - std::conj(rhs[2])) > 1e-7) {
    throw_precondition("ConjugacyInconsistent",
                       "conjugate slots disagree with direct cross-ratios");
  }
  return {rhs[0], rhs[2]};
}

// Samples reduced random words in the generators of an assembled surface
// representation and tests their traces: all real points to a real form, all
// inverse traces self-paired to a complex bilinear form, all inverse traces
// conjugate to a unitary form, the last refined by whether any sampled word
// is strongly loxodromic. Heuristic evidence only; the verdict records the
// sample size.
inline SubgroupVerdict acosta_scan(const SurfaceRep& rep, int n_words = 500,
                                   int max_len = 12, std::uint64_t seed = 0) {
  if (rep.generators.empty())
    throw_input("InvalidScan", "representation has no generators");
  if (n_words < 1 || max_len < 2)
    throw_input("InvalidScan", "need n_words >= 1 and max_len >= 2");

  Rng rng(seed);
  const int ng = static_cast<int>(rep.generators.size());
  double real_defect = 0.0;
  double self_defect = 0.0;
  double pair_defect = 0.0;
  bool witness = false;
  int sampled = 0;

  for (int w = 0; w < n_words; ++w) {
    const int len =
        std::min(max_len, 2 + static_cast<int>(rng.uniform() * (max_len - 1)));
    Mat3 fwd = Mat3::identity();
    Mat3 inv = Mat3::identity();
    // forward error bounds on the two products (max-entry scale); one
    // multiply turns entry error E into E|g| plus fresh roundoff eps|m||g|
    double err_f = 0.0, err_i = 0.0;
    int prev = 0;
    int built = 0;
    for (int i = 0; i < len; ++i) {
      int lit = 0;
      do {
        const int gi = std::min(ng, 1 + static_cast<int>(rng.uniform() * ng));
        lit = rng.uniform() < 0.5 ? -gi : gi;
      } while (lit == -prev);
      const Mat3& g = rep.generators[static_cast<std::size_t>(std::abs(lit)) - 1].second;
      const Mat3 step = lit > 0 ? g : inverse_unimodular(g);
      const Mat3 sinv = inverse_unimodular(step);
      const Mat3 next = fwd * step;
      if (max_abs(next) > 1e8) break;  // norm cap keeps traces well scaled
      const double gs = 3.0 * max_abs(step), gi2 = 3.0 * max_abs(sinv);
      err_f = err_f * gs + 1e-15 * max_abs(fwd) * gs;
      err_i = err_i * gi2 + 1e-15 * max_abs(inv) * gi2;
      fwd = next;
      inv = sinv * inv;
      prev = lit;
      ++built;
    }
    if (built < 2) continue;
    const cx t = trace(fwd);
    const cx ti = trace(inv);
    const double sc = 1.0 + std::abs(t) + std::abs(ti);
    // cancellation cycles (norm growing then collapsing) leave the error
    // bound far above the trace scale; such words carry no usable evidence
    if (3.0 * (err_f + err_i) > 1e-9 * sc) continue;
    ++sampled;
    real_defect = std::max(
        real_defect, std::max(std::abs(t.imag()), std::abs(ti.imag())) / sc);
    self_defect = std::max(self_defect, std::abs(ti - t) / sc);
    pair_defect = std::max(pair_defect, std::abs(ti - std::conj(t)) / sc);
    if (!witness) {
      const TraceTestResult lox = strongly_loxodromic_by_trace(t, ti);
      if (lox.strongly_loxodromic && !lox.indeterminate) witness = true;
    }
  }

  if (sampled == 0)
    throw_precondition("IllConditioned",
                       "no numerically trustworthy words sampled");

  const double tol = 1e-6;
  const bool real_ok = real_defect <= tol;
  const bool self_ok = self_defect <= tol;
  const bool pair_ok = pair_defect <= tol;
  SubgroupVerdict out;
  out.evidence = {
      {"word_traces_real", real_defect, real_ok},
      {"word_traces_self_paired", self_defect, self_ok},
      {"word_inverse_traces_conjugate", pair_defect, pair_ok},
      {"loxodromic_witness", witness ? 1.0 : 0.0, witness},
  };
  if (real_ok) out.passing.push_back(SubgroupTag::SL3R);
  if (pair_ok) out.passing.push_back(SubgroupTag::SU21);
  if (self_ok) out.passing.push_back(SubgroupTag::SO3C);
  out.tag = out.passing.empty() ? SubgroupTag::Generic : out.passing.front();
  out.note = "sampled " + std::to_string(sampled) + " words of length <= " +
             std::to_string(max_len);
  if (pair_ok && !real_ok && !witness)
    out.note += "; SU21-or-SU3: no loxodromic witness found";
  return out;
}

}  // namespace fn3
