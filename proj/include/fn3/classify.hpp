#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "fn3/eigen3.hpp"
#include "fn3/mat3.hpp"

namespace fn3 {

enum class ElementTag {
  Identity,
  RegularElliptic,
  ComplexReflection,
  Unipotent,
  EllipticParabolic,
  LoxoParabolic,
  ComplexHomothety,
  Screw,
  StronglyLoxodromic,
};

inline const char* to_string(ElementTag t) {
  switch (t) {
    case ElementTag::Identity: return "Identity";
    case ElementTag::RegularElliptic: return "RegularElliptic";
    case ElementTag::ComplexReflection: return "ComplexReflection";
    case ElementTag::Unipotent: return "Unipotent";
    case ElementTag::EllipticParabolic: return "EllipticParabolic";
    case ElementTag::LoxoParabolic: return "LoxoParabolic";
    case ElementTag::ComplexHomothety: return "ComplexHomothety";
    case ElementTag::Screw: return "Screw";
    case ElementTag::StronglyLoxodromic: return "StronglyLoxodromic";
  }
  return "?";
}

struct ElementClass {
  ElementTag tag;
};

// Decision tree: the discriminant of the trace cubic decides whether the
// spectrum is repeated (root-distance clustering would need sqrt(eps) slack
// because Cardano loses half its digits at a double root). The repeated root,
// when present, is re-derived from the derivative quadratic, which stays
// well-conditioned. Unit-moduli + diagonalizability (adjugate rank) then pick
// the tag.
inline ElementClass classify(const Mat3& m, double tol = 1e-9) {
  const double scale = std::max(1.0, max_abs(m));
  if (distance(m, Mat3::identity()) <= tol * scale)
    return {ElementTag::Identity};

  const auto [t, tinv] = char_poly(m);
  const bool repeated =
      std::abs(trace_test_F(t, tinv)) <= tol * trace_test_F_scale(t, tinv);

  if (!repeated) {
    const auto v = eigenvalues_from_traces(t, tinv);
    bool unit = true;
    for (int i = 0; i < 3; ++i)
      if (std::abs(std::abs(v[i]) - 1.0) > tol) unit = false;
    if (unit) return {ElementTag::RegularElliptic};
    const double m0 = std::abs(v[0]), m1 = std::abs(v[1]), m2 = std::abs(v[2]);
    const bool mod_eq = std::abs(m0 - m1) <= tol * (1.0 + m0 + m1) ||
                        std::abs(m1 - m2) <= tol * (1.0 + m1 + m2);
    return {mod_eq ? ElementTag::Screw : ElementTag::StronglyLoxodromic};
  }

  const cx rep = repeated_root_from_traces(t, tinv);
  const cx simple = cx(1.0) / (rep * rep);  // root product is 1
  const double tol_eq = tol * (1.0 + std::abs(rep) + std::abs(simple));
  const bool unit = std::abs(std::abs(rep) - 1.0) <= tol &&
                    std::abs(std::abs(simple) - 1.0) <= tol;

  if (std::abs(rep - simple) <= tol_eq) {
    // triple root: a cube root of unity, so the spectrum is unitary
    Mat3 d = m;
    d(0, 0) -= rep;
    d(1, 1) -= rep;
    d(2, 2) -= rep;
    if (max_abs(d) <= tol * scale) return {ElementTag::ComplexReflection};
    return {std::abs(rep - 1.0) <= tol_eq ? ElementTag::Unipotent
                                          : ElementTag::EllipticParabolic};
  }

  // double root: diagonalizable iff its geometric multiplicity is 2,
  // read off the adjugate rank of (M - rep I)
  const bool diagonalizable = geometric_multiplicity(m, rep, tol) >= 2;
  if (diagonalizable)
    return {unit ? ElementTag::ComplexReflection : ElementTag::ComplexHomothety};
  // the roots differ here, so a unit-moduli parabolic is never unipotent
  return {unit ? ElementTag::EllipticParabolic : ElementTag::LoxoParabolic};
}

struct TraceTestResult {
  bool strongly_loxodromic = false;
  bool indeterminate = false;  // |F| within 1e-12 of the vanishing locus
  cx F{};
};

// Trace-only strong-loxodromy test: self-paired traces (tinv = conj t) demand
// Re F > 0; otherwise F != 0 suffices. Boundary |F| <= 1e-12 is flagged.
inline TraceTestResult strongly_loxodromic_by_trace(const cx& t, const cx& tinv) {
  TraceTestResult r;
  r.F = trace_test_F(t, tinv);
  const bool self_paired = std::abs(tinv - std::conj(t)) <= 1e-12 * (1.0 + std::abs(t));
  if (std::abs(r.F) <= 1e-12) r.indeterminate = true;
  if (self_paired)
    r.strongly_loxodromic = r.F.real() > 0.0;
  else
    r.strongly_loxodromic = std::abs(r.F) > 1e-12;
  return r;
}

}  // namespace fn3
