// Pants constructors: Newton round trips on random coordinates, branch
// selection, warm-started special families, the reducible block family, and
// the positive-spectrum real family with its rho_C resolution protocol.

#include <array>
#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "fn3/pants.hpp"

namespace fn3 {
namespace {

// Random octuple realized by an explicit pair: diagonal A with pairwise
// eigenvalue modulus ratios in [1.3, 2.2] (product exactly 1, so the first
// boundary is strongly loxodromic by a wide margin) against a random
// unimodular B.
TraceCoordsY random_loxodromic_y(Rng& rng, Mat3* a_out = nullptr, Mat3* b_out = nullptr) {
  const double r1 = rng.uniform(1.3, 2.2), r2 = rng.uniform(1.3, 2.2);
  const double g = std::cbrt(r1 * r2 * r2);
  const cx l0 = std::polar(r1 * r2 / g, rng.uniform(-3.1, 3.1));
  const cx l1 = std::polar(r2 / g, rng.uniform(-3.1, 3.1));
  const cx l2 = 1.0 / (l0 * l1);
  const Mat3 a = Mat3::diag(l0, l1, l2);
  const Mat3 b = random_unimodular(rng);
  if (a_out) *a_out = a;
  if (b_out) *b_out = b;
  return coords_y(a, b);
}

TEST(BuildPants, RoundTripsRandomCoordinates) {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const TraceCoordsY y = random_loxodromic_y(rng);
    const auto [rep, report] = build_pants(y, 1000 + trial);
    for (int k = 0; k < 8; ++k) {
      EXPECT_LE(std::abs(rep.coords.v[k] - y.v[k]), 1e-7 * (1.0 + std::abs(y.v[k])))
          << "trial " << trial << " slot " << k;
    }
    EXPECT_EQ(pants_coords(rep).root_choice, y.root_choice) << "trial " << trial;
    EXPECT_LE(distance(rep.C * rep.B * rep.A, Mat3::identity()), 1e-9);
    EXPECT_LE(std::abs(det(rep.B) - cx(1.0)), 1e-9);
    EXPECT_LE(report.residual, 1e-9);
  }
}

TEST(BuildPants, DeterministicForFixedSeed) {
  Rng rng(66);
  const TraceCoordsY y = random_loxodromic_y(rng);
  const auto r1 = build_pants(y, 42);
  const auto r2 = build_pants(y, 42);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(r1.first.B(i, j), r2.first.B(i, j));
      EXPECT_EQ(r1.first.A(i, j), r2.first.A(i, j));
    }
  EXPECT_EQ(r1.second.iterations, r2.second.iterations);
  EXPECT_EQ(r1.second.restarts, r2.second.restarts);
  EXPECT_EQ(r1.second.gauge, r2.second.gauge);
}

TEST(BuildPants, RealizesBothCommutatorBranches) {
  Rng rng(62);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const TraceCoordsY y = random_loxodromic_y(rng);
    const CommutatorQuadratic q = lawton_sym(y);
    if (std::abs(q.plus_root - q.minus_root) <
        1e-3 * (1.0 + std::abs(q.plus_root) + std::abs(q.minus_root)))
      continue;
    TraceCoordsY flipped = y;
    flipped.root_choice = (y.root_choice == RootBranch::PlusBranch)
                              ? RootBranch::MinusBranch
                              : RootBranch::PlusBranch;
    const auto [rep, report] = build_pants(flipped, 2000 + trial);
    const cx want = q.root(flipped.root_choice);
    const cx got = trace_commutator(rep.A, rep.B);
    EXPECT_LE(std::abs(got - want), 1e-6 * (1.0 + std::abs(want))) << "trial " << trial;
    EXPECT_LE(report.residual, 1e-9);
    ++checked;
  }
  EXPECT_GE(checked, 15);
}

TEST(BuildPants, FuchsianOctupleMatchesEmbeddedPair) {
  const auto pair2 = sl2_pants_from_traces(cx(-3.0), cx(-3.0), cx(-3.0));
  const Mat3 a0 = phi_star(pair2.ahat), b0 = phi_star(pair2.bhat);
  const TraceCoordsY y = coords_y(a0, b0);
  const double want[8] = {8, 8, 8, 79, 8, 8, 8, 79};
  for (int k = 0; k < 8; ++k) EXPECT_LE(std::abs(y.v[k] - want[k]), 1e-9) << "slot " << k;

  const auto [rep, report] = build_pants(y, 7);
  EXPECT_LE(std::abs(trace_commutator(rep.A, rep.B) - cx(2703.0)), 1e-6);
  EXPECT_TRUE(rep.irreducible_flag);
  EXPECT_EQ(report.gauge, "b12 = b23 = 1 (torus slice)");
  EXPECT_EQ(report.restarts, 0);  // self-paired warm start lands immediately
  EXPECT_LE(distance(rep.C * rep.B * rep.A, Mat3::identity()), 1e-9);
}

TEST(BuildPants, ReducibleBranchSolvesInFallbackSlice) {
  const auto pair2 = sl2_pants_from_traces(cx(3.2), cx(2.7), cx(4.1));
  const Mat3 a0 = block_embed(pair2.ahat), b0 = block_embed(pair2.bhat);
  const TraceCoordsY y = coords_y(a0, b0);
  ASSERT_EQ(reducibility_test(y), ReducibilityVerdict::ReducibleBranch);

  const auto [rep, report] = build_pants(y, 11);
  EXPECT_EQ(report.gauge, "b13 = b21 = 1 (fallback slice)");
  EXPECT_FALSE(rep.irreducible_flag);
  for (int k = 0; k < 8; ++k) {
    EXPECT_LE(std::abs(rep.coords.v[k] - y.v[k]), 1e-7 * (1.0 + std::abs(y.v[k])))
        << "slot " << k;
  }
  EXPECT_LE(distance(rep.C * rep.B * rep.A, Mat3::identity()), 1e-9);
}

TEST(BuildPants, RejectsNonLoxodromicBoundary) {
  TraceCoordsY y;
  const double t = 2.0 * std::cos(1.0) + 1.0;  // unit-modulus spectrum
  y.v = {cx(t), cx(3.3), cx(3.1), cx(-2.0), cx(t), cx(3.3), cx(3.1), cx(-2.0)};
  try {
    build_pants(y, 1);
    FAIL() << "expected BoundaryNotLoxodromic";
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "BoundaryNotLoxodromic");
    EXPECT_EQ(e.kind(), ErrorKind::MathPrecondition);
  }
}

TEST(BuildReducible, TraceTwoTripleGivesIdentityThirdBoundary) {
  const PantsRep rep = build_reducible_pants({cx(2.0), cx(2.0), cx(2.0)},
                                             {cx(0.0), cx(0.0)}, {cx(0.0), cx(0.0)});
  EXPECT_LE(distance(rep.C, Mat3::identity()), 1e-12);
  const double want[8] = {3, 3, 3, -6, 3, 3, 3, -6};
  for (int k = 0; k < 8; ++k) EXPECT_LE(std::abs(rep.coords.v[k] - want[k]), 1e-12);
  EXPECT_LE(distance(rep.C * rep.B * rep.A, Mat3::identity()), 1e-12);
  EXPECT_FALSE(rep.irreducible_flag);
}

TEST(BuildReducible, OffsetsAreInvisibleToTraces) {
  const std::array<cx, 3> tr{cx(3.2), cx(2.7), cx(4.1)};
  const PantsRep plain = build_reducible_pants(tr, {cx(0.0), cx(0.0)}, {cx(0.0), cx(0.0)});
  const PantsRep off = build_reducible_pants(tr, {cx(0.4, -0.2), cx(1.1, 0.3)},
                                             {cx(-0.7, 0.1), cx(0.2, 0.9)});
  for (int k = 0; k < 8; ++k)
    EXPECT_LE(std::abs(plain.coords.v[k] - off.coords.v[k]), 1e-10) << "slot " << k;

  // the shape invariants sit on the linear branch: sigma = 3 - sum of
  // boundary traces = -(x + y + z) for block traces (x, y, z)
  const cx sigma_want = -(tr[0] + tr[1] + tr[2]);
  EXPECT_LE(std::abs(plain.coords.v[3] - sigma_want), 1e-9);
  EXPECT_LE(std::abs(plain.coords.v[7] - sigma_want), 1e-9);
  EXPECT_EQ(reducibility_test(plain.coords), ReducibilityVerdict::ReducibleBranch);
  EXPECT_FALSE(off.irreducible_flag);
  EXPECT_LE(distance(off.C * off.B * off.A, Mat3::identity()), 1e-10);
}

TEST(GoldmanPants, SymmetricPinnedFamilyUsesPrintedRho) {
  GoldmanParams p;
  p.lambda = {0.25, 0.25, 0.25};
  p.tau = {5.0, 5.0, 5.0};
  p.s = 1.0;
  p.r = std::sqrt(4.5 * 4.5 * 4.5);
  GoldmanInfo info;
  const PantsRep rep = goldman_pants(p, &info);

  EXPECT_EQ(info.rho_path, "printed");
  EXPECT_NEAR(info.rho.rho_c, 4.5, 1e-12);
  EXPECT_LE(info.cba_residual, 1e-9);
  EXPECT_LE(std::abs(trace(rep.A) - cx(5.25)), 1e-10);
  EXPECT_LE(std::abs(trace(adjugate(rep.A)) - cx(5.25)), 1e-10);
  EXPECT_LE(std::abs(trace(rep.B) - cx(5.25)), 1e-10);
  EXPECT_LE(std::abs(trace(rep.C) - cx(5.25)), 1e-10);
  EXPECT_TRUE(rep.irreducible_flag);

  // positive real simple spectrum on each boundary
  const auto ev = eigenvalues_from_traces(trace(rep.A), trace(adjugate(rep.A)));
  for (const cx& v : ev) {
    EXPECT_LE(std::abs(v.imag()), 1e-9);
    EXPECT_GT(v.real(), 0.0);
  }
}

TEST(GoldmanPants, AsymmetricParamsResolveRhoThroughRelation) {
  GoldmanParams p;
  p.lambda = {0.2, 0.3, 0.25};
  p.tau = {5.0, 4.2, 4.6};
  p.s = 1.3;
  p.r = 2.1;
  GoldmanInfo info;
  const PantsRep rep = goldman_pants(p, &info);

  EXPECT_EQ(info.rho_path, "relation");
  EXPECT_GT(info.printed_trace_defect, 1e-8);
  EXPECT_LE(info.cba_residual, 1e-9);
  EXPECT_LE(std::abs(trace(rep.A) - cx(5.2)), 1e-10);
  EXPECT_LE(std::abs(trace(rep.B) - cx(4.5)), 1e-10);
  EXPECT_LE(std::abs(trace(rep.C) - cx(4.85)), 1e-10);
  EXPECT_LE(std::abs(trace(adjugate(rep.A)) - cx(1.0 / 0.2 + 0.2 * 5.0)), 1e-10);
  EXPECT_LE(std::abs(trace(adjugate(rep.B)) - cx(1.0 / 0.3 + 0.3 * 4.2)), 1e-10);
  EXPECT_LE(std::abs(trace(adjugate(rep.C)) - cx(1.0 / 0.25 + 0.25 * 4.6)), 1e-10);
}

TEST(GoldmanPants, ZhangSigmaMatchesMatrixShapeInvariants) {
  Rng rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    GoldmanParams p;
    for (int k = 0; k < 3; ++k) {
      const double l = rng.uniform(0.1, 0.9);
      const double lo = 2.0 / std::sqrt(l), hi = l + 1.0 / (l * l);
      p.lambda[k] = l;
      p.tau[k] = lo + (hi - lo) * rng.uniform(0.05, 0.95);
    }
    p.s = rng.uniform(0.3, 3.0);
    p.r = rng.uniform(0.3, 5.0);

    const PantsRep rep = goldman_pants(p);
    const ShapePair direct = shape_invariants(rep.A, rep.B);
    const ShapePair closed = zhang_sigma(p);
    EXPECT_LE(std::abs(direct.sigma_plus - closed.sigma_plus),
              1e-8 * (1.0 + std::abs(closed.sigma_plus)))
        << "trial " << trial;
    EXPECT_LE(std::abs(direct.sigma_minus - closed.sigma_minus),
              1e-8 * (1.0 + std::abs(closed.sigma_minus)))
        << "trial " << trial;
    EXPECT_LE(std::abs(rep.coords.v[3] - direct.sigma_plus),
              1e-8 * (1.0 + std::abs(direct.sigma_plus)));
    EXPECT_LE(std::abs(rep.coords.v[7] - direct.sigma_minus),
              1e-8 * (1.0 + std::abs(direct.sigma_minus)));
  }
}

TEST(GoldmanPants, RejectsInvalidParameters) {
  const auto expect_violation = [](const GoldmanParams& p, bool permissive) {
    try {
      goldman_pants(p, nullptr, permissive);
      FAIL() << "expected ConstraintViolated";
    } catch (const Error& e) {
      EXPECT_EQ(e.name(), "ConstraintViolated");
      EXPECT_EQ(e.kind(), ErrorKind::MathPrecondition);
    }
  };

  GoldmanParams p;
  p.lambda = {1.2, 0.25, 0.25};  // boundary eigenvalue must stay below 1
  p.tau = {5.0, 5.0, 5.0};
  p.s = 1.0;
  p.r = 1.0;
  expect_violation(p, false);

  p.lambda = {0.25, 0.25, 0.25};
  p.tau = {3.9, 5.0, 5.0};  // below the loxodromic window 2 / sqrt(lambda)
  expect_violation(p, false);

  p.tau = {5.0, 5.0, 5.0};
  p.s = 0.0;
  expect_violation(p, false);

  p.s = 1.0;
  p.lambda = {-0.1, 0.25, 0.25};  // negative eigenvalue fails even permissive
  expect_violation(p, true);
}

TEST(GoldmanPants, PermissiveModeExtendsTheMatrixIdentities) {
  GoldmanParams p;
  p.lambda = {0.25, 0.25, 0.25};
  p.tau = {1.0, 1.0, 1.0};  // outside the strict window
  p.s = -1.2;               // negative internal parameter
  p.r = 2.0;
  GoldmanInfo info;
  const PantsRep rep = goldman_pants(p, &info, true);
  EXPECT_LE(info.cba_residual, 1e-9);
  EXPECT_LE(std::abs(trace(rep.A) - cx(1.25)), 1e-10);
  EXPECT_LE(std::abs(trace(rep.C) - cx(1.25)), 1e-10);
}

TEST(GoldmanBoundary, TraceRoundTrips) {
  const auto tr = goldman_boundary_to_traces(0.25, 5.0);
  EXPECT_LE(std::abs(tr.first - cx(5.25)), 1e-12);
  EXPECT_LE(std::abs(tr.second - cx(5.25)), 1e-12);
  const auto back = traces_to_goldman_boundary(tr.first, tr.second);
  EXPECT_NEAR(back.first, 0.25, 1e-12);
  EXPECT_NEAR(back.second, 5.0, 1e-12);

  Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const double l = rng.uniform(0.1, 0.9);
    const double lo = 2.0 / std::sqrt(l), hi = l + 1.0 / (l * l);
    const double tau = lo + (hi - lo) * rng.uniform(0.05, 0.95);
    const auto t = goldman_boundary_to_traces(l, tau);
    const auto b = traces_to_goldman_boundary(t.first, t.second);
    EXPECT_NEAR(b.first, l, 1e-10 * (1.0 + l)) << "trial " << trial;
    EXPECT_NEAR(b.second, tau, 1e-10 * (1.0 + tau)) << "trial " << trial;
  }
}

TEST(GoldmanBoundary, RejectsSingularAndNonRealCharts) {
  // tau at the window edge collides the smallest eigenvalue with the pair
  const auto edge = goldman_boundary_to_traces(0.25, 0.25 + 16.0);
  try {
    traces_to_goldman_boundary(edge.first, edge.second);
    FAIL() << "expected DegenerateJacobian";
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "DegenerateJacobian");
    EXPECT_EQ(e.kind(), ErrorKind::MathPrecondition);
  }

  try {
    traces_to_goldman_boundary(cx(5.25, 0.5), cx(5.25));
    FAIL() << "expected NotPositiveRealSpectrum";
  } catch (const Error& e) {
    EXPECT_EQ(e.name(), "NotPositiveRealSpectrum");
  }
}

}  // namespace
}  // namespace fn3
