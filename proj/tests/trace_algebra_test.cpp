#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "fn3/eigen3.hpp"
#include "fn3/mat2.hpp"
#include "fn3/rng.hpp"
#include "fn3/trace_algebra.hpp"

using namespace fn3;

namespace {

void expect_cx_near(const cx& a, const cx& b, double tol) {
  EXPECT_LE(std::abs(a - b), tol) << "got " << a.real() << "+" << a.imag()
                                  << "i want " << b.real() << "+" << b.imag() << "i";
}

double rel(const cx& got, const cx& want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

TraceCoordsX all_threes() {
  TraceCoordsX x;
  for (auto& z : x.v) z = 3.0;
  return x;
}

Mat2 random_sl2(Rng& rng) {
  for (;;) {
    Mat2 m;
    for (auto& z : m.e) z = rng.cgauss();
    const cx d = det(m);
    if (std::abs(d) < 1e-3) continue;
    const cx s = std::sqrt(d);
    for (auto& z : m.e) z /= s;
    return m;
  }
}

}  // namespace

TEST(LawtonRaw, IdentityPairGivesSixNine) {
  const auto [s0, p0] = lawton_raw(all_threes());
  expect_cx_near(s0, cx(6.0), 1e-13);
  expect_cx_near(p0, cx(9.0), 1e-13);
}

TEST(LawtonRaw, MatchesCommutatorTraces) {
  Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 a = random_unimodular(rng), b = random_unimodular(rng);
    const auto [s0, p0] = lawton_raw(coords_x(a, b));
    const cx t1 = trace_commutator(a, b), t2 = trace_commutator(b, a);
    EXPECT_LE(rel(s0, t1 + t2), 1e-8) << "sample " << i;
    EXPECT_LE(rel(p0, t1 * t2), 1e-8) << "sample " << i;
  }
}

TEST(LawtonRaw, SharedInvariantPlaneLandsOnBranchLocus) {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const Mat3 a = block_embed(random_sl2(rng), rng.cgauss(), rng.cgauss());
    const Mat3 b = block_embed(random_sl2(rng), rng.cgauss(), rng.cgauss());
    const auto [s0, p0] = lawton_raw(coords_x(a, b));
    EXPECT_LE(std::abs(s0 * s0 - 4.0 * p0), 1e-8 * (1.0 + std::norm(s0)));
    // the commutator fixes a vector on the shared plane's complement line
    const auto v = eigenvalues3(a * b * adjugate(a) * adjugate(b));
    const double gap = std::min(
        {std::abs(v[0] - 1.0), std::abs(v[1] - 1.0), std::abs(v[2] - 1.0)});
    EXPECT_LE(gap, 1e-7);
  }
}

TEST(LawtonSym, IdentityTripleGivesSixNine) {
  TraceCoordsY y;
  y.v = {3.0, 3.0, 3.0, -6.0, 3.0, 3.0, 3.0, -6.0};
  const auto q = lawton_sym(y);
  expect_cx_near(q.S, cx(6.0), 1e-12);
  expect_cx_near(q.P, cx(9.0), 1e-12);
  expect_cx_near(q.plus_root, cx(3.0), 1e-7);
  expect_cx_near(q.minus_root, cx(3.0), 1e-7);
}

TEST(LawtonSym, MatchesRawUnderSubstitution) {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    TraceCoordsY y;
    for (auto& z : y.v) z = 3.0 * rng.cgauss();
    const auto q = lawton_sym(y);
    const auto [s0, p0] = lawton_raw(x_from_y(y));
    EXPECT_LE(rel(q.S, s0), 1e-9) << "sample " << i;
    EXPECT_LE(rel(q.P, p0), 1e-9) << "sample " << i;
  }
}

TEST(LawtonSym, RootsSolveQuadratic) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    TraceCoordsY y;
    for (auto& z : y.v) z = 2.0 * rng.cgauss();
    const auto q = lawton_sym(y);
    for (const cx r : {q.plus_root, q.minus_root}) {
      EXPECT_LE(std::abs(r * r - q.S * r + q.P), 1e-8 * (1.0 + std::norm(r)));
    }
    expect_cx_near(q.plus_root + q.minus_root, q.S, 1e-8 * (1.0 + std::abs(q.S)));
    expect_cx_near(q.plus_root * q.minus_root, q.P, 1e-8 * (1.0 + std::abs(q.P)));
    EXPECT_TRUE(lex_ge(q.plus_root, q.minus_root));
  }
}

TEST(LawtonSym, RootsAreTheTwoCommutatorTraces) {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const Mat3 a = random_unimodular(rng), b = random_unimodular(rng);
    const auto q = lawton_sym(coords_y(a, b));
    const cx t1 = trace_commutator(a, b), t2 = trace_commutator(b, a);
    const double d1 = std::min(std::abs(q.plus_root - t1), std::abs(q.plus_root - t2));
    const double d2 = std::min(std::abs(q.minus_root - t1), std::abs(q.minus_root - t2));
    EXPECT_LE(d1, 1e-7 * (1.0 + std::abs(t1) + std::abs(t2)));
    EXPECT_LE(d2, 1e-7 * (1.0 + std::abs(t1) + std::abs(t2)));
  }
}

TEST(ShapeInvariants, IdentityPair) {
  const auto s = shape_invariants(Mat3::identity(), Mat3::identity());
  expect_cx_near(s.sigma_plus, cx(-6.0), 1e-14);
  expect_cx_near(s.sigma_minus, cx(-6.0), 1e-14);
}

TEST(ShapeInvariants, CyclicChainsAgree) {
  Rng rng(26);
  for (int i = 0; i < 300; ++i) {
    const Mat3 a = random_unimodular(rng), b = random_unimodular(rng);
    const Mat3 c = inverse_unimodular(b * a);
    const auto sab = shape_invariants(a, b);
    const auto sbc = shape_invariants(b, c);
    const auto sca = shape_invariants(c, a);
    const double scale = 1.0 + std::abs(sab.sigma_plus) + std::abs(sab.sigma_minus);
    EXPECT_LE(std::abs(sab.sigma_plus - sbc.sigma_plus), 1e-9 * scale);
    EXPECT_LE(std::abs(sab.sigma_plus - sca.sigma_plus), 1e-9 * scale);
    EXPECT_LE(std::abs(sab.sigma_minus - sbc.sigma_minus), 1e-9 * scale);
    EXPECT_LE(std::abs(sab.sigma_minus - sca.sigma_minus), 1e-9 * scale);
  }
}

TEST(ShapeInvariants, BlockPairFormula) {
  Rng rng(27);
  for (int i = 0; i < 100; ++i) {
    const Mat2 ah = random_sl2(rng), bh = random_sl2(rng);
    const Mat3 a = block_embed(ah), b = block_embed(bh);
    const auto s = shape_invariants(a, b);
    const cx tc = trace(inverse_unimodular(bh * ah)) + 1.0;
    const cx want = 3.0 - (trace(ah) + 1.0) - (trace(bh) + 1.0) - tc;
    expect_cx_near(s.sigma_plus, want, 1e-9 * (1.0 + std::abs(want)));
    expect_cx_near(s.sigma_minus, want, 1e-9 * (1.0 + std::abs(want)));
  }
}

TEST(CoordsMaps, RoundTripIsExact) {
  Rng rng(28);
  for (int i = 0; i < 200; ++i) {
    TraceCoordsX x;
    for (auto& z : x.v) z = 3.0 * rng.cgauss();
    const auto x2 = x_from_y(y_from_x(x));
    for (int k = 0; k < 8; ++k)
      EXPECT_LE(std::abs(x2.v[k] - x.v[k]), 1e-14 * (1.0 + std::abs(x.v[k])));
  }
}

TEST(CoordsMaps, MatrixSampledCoordsMatchDirectTraces) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const Mat3 a = random_unimodular(rng), b = random_unimodular(rng);
    const Mat3 c = inverse_unimodular(b * a);
    const auto y = coords_y(a, b);
    const double tol = 1e-10 * (1.0 + max_abs(a) * max_abs(b));
    expect_cx_near(y.v[0], trace(a), tol);
    expect_cx_near(y.v[1], trace(b), tol);
    expect_cx_near(y.v[2], trace(c), tol);
    expect_cx_near(y.v[4], trace(inverse_unimodular(a)), tol);
    expect_cx_near(y.v[5], trace(inverse_unimodular(b)), tol);
    expect_cx_near(y.v[6], trace(inverse_unimodular(c)), tol);
    const auto s = shape_invariants(a, b);
    expect_cx_near(y.v[3], s.sigma_plus, tol);
    expect_cx_near(y.v[7], s.sigma_minus, tol);
    const auto x = coords_x(a, b);
    expect_cx_near(x.v[2], trace(a * b), tol);
    expect_cx_near(x.v[3], trace(inverse_unimodular(a) * b), tol);
    expect_cx_near(x.v[6], trace(inverse_unimodular(b) * inverse_unimodular(a)), tol);
    expect_cx_near(x.v[7], trace(inverse_unimodular(b) * a), tol);
  }
}

TEST(CyclicSymmetry, SAndPInvariantUnderTripleRotation) {
  Rng rng(30);
  for (int i = 0; i < 200; ++i) {
    TraceCoordsY y;
    for (auto& z : y.v) z = 2.5 * rng.cgauss();
    const auto q0 = lawton_sym(y);
    const auto q1 = lawton_sym(cyclic_permute_y(y));
    const auto q2 = lawton_sym(cyclic_permute_y(cyclic_permute_y(y)));
    EXPECT_LE(rel(q1.S, q0.S), 1e-10);
    EXPECT_LE(rel(q1.P, q0.P), 1e-10);
    EXPECT_LE(rel(q2.S, q0.S), 1e-10);
    EXPECT_LE(rel(q2.P, q0.P), 1e-10);
  }
}

TEST(CyclicSymmetry, MatrixRotationInducesTheYPermutation) {
  Rng rng(31);
  const Mat3 a = random_unimodular(rng), b = random_unimodular(rng);
  const Mat3 c = inverse_unimodular(b * a);
  // (A,B,C) -> (B,C,A) with relation (A)(C)(B) reversed composition: the new
  // pair is (B, C) and the new third element is A.
  const auto y = coords_y(a, b);
  const auto yr = coords_y(b, c);
  const auto yp = cyclic_permute_y(y);
  for (int k = 0; k < 8; ++k)
    EXPECT_LE(std::abs(yr.v[k] - yp.v[k]), 1e-10 * (1.0 + std::abs(yp.v[k]))) << k;
}

TEST(BranchFactorization, PinnedTriples) {
  const auto f0 = branch_factorization(cx(3.0), cx(3.0), cx(3.0));
  expect_cx_near(f0.linear_root, cx(-6.0), 1e-13);
  expect_cx_near(f0.comm_at_linear, cx(3.0), 1e-13);

  const auto f8 = branch_factorization(cx(8.0), cx(8.0), cx(8.0));
  expect_cx_near(f8.t2_roots.first, cx(79.0), 1e-10);
  expect_cx_near(f8.t2_roots.second, cx(-29.0), 1e-10);
}

TEST(BranchFactorization, DiscriminantFactorsOnSelfPairedLocus) {
  Rng rng(32);
  const auto disk5 = [&rng] {
    return std::polar(5.0 * std::sqrt(rng.uniform()), rng.uniform(-3.14159, 3.14159));
  };
  for (int i = 0; i < 1000; ++i) {
    const cx a = disk5(), b = disk5(), c = disk5(), t = disk5();
    TraceCoordsY y;
    y.v = {a, b, c, t, a, b, c, t};
    const auto q = lawton_sym(y);
    const cx disc = q.S * q.S - 4.0 * q.P;
    const cx lin = t + a + b + c - 3.0;
    const cx want = lin * lin * t2_evaluate(a, b, c, t);
    EXPECT_LE(rel(disc, want), 1e-8) << "sample " << i;
  }
}

TEST(BranchFactorization, T2RootsSolveT2) {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const cx a = 3.0 * rng.cgauss(), b = 3.0 * rng.cgauss(), c = 3.0 * rng.cgauss();
    const auto f = branch_factorization(a, b, c);
    EXPECT_LE(std::abs(t2_evaluate(a, b, c, f.t2_roots.first)),
              1e-9 * (1.0 + std::norm(f.t2_roots.first)));
    EXPECT_LE(std::abs(t2_evaluate(a, b, c, f.t2_roots.second)),
              1e-9 * (1.0 + std::norm(f.t2_roots.second)));
  }
}

TEST(ReducibilityTest, ThreeVerdicts) {
  Rng rng(34);
  // block-reducible matrix sample
  const Mat3 a = block_embed(random_sl2(rng)), b = block_embed(random_sl2(rng));
  EXPECT_EQ(reducibility_test(coords_y(a, b)), ReducibilityVerdict::ReducibleBranch);

  TraceCoordsY yf;
  yf.v = {8.0, 8.0, 8.0, 79.0, 8.0, 8.0, 8.0, 79.0};
  EXPECT_EQ(reducibility_test(yf), ReducibilityVerdict::IrreducibleBranch);

  TraceCoordsY yg;
  for (auto& z : yg.v) z = 2.0 * rng.cgauss();
  EXPECT_EQ(reducibility_test(yg), ReducibilityVerdict::NotSelfPaired);
}

TEST(FrickeSL2, PinnedAndOracle) {
  const auto f1 = fricke_sl2(cx(2.0), cx(2.0), cx(2.0));
  expect_cx_near(f1.tr_ainv_b, cx(2.0), 0.0);
  expect_cx_near(f1.tr_comm, cx(2.0), 0.0);

  const auto f2 = fricke_sl2(cx(-3.0), cx(-3.0), cx(-3.0));
  expect_cx_near(f2.tr_ainv_b, cx(12.0), 0.0);
  expect_cx_near(f2.tr_comm, cx(52.0), 0.0);

  Rng rng(35);
  for (int i = 0; i < 200; ++i) {
    const Mat2 a = random_sl2(rng), b = random_sl2(rng);
    const auto f = fricke_sl2(trace(a), trace(b), trace(a * b));
    const cx want_ainvb = trace(inverse_unimodular(a) * b);
    const cx want_comm = trace(a * b * inverse_unimodular(a) * inverse_unimodular(b));
    EXPECT_LE(std::abs(f.tr_ainv_b - want_ainvb), 1e-10 * (1.0 + std::abs(want_ainvb)));
    EXPECT_LE(std::abs(f.tr_comm - want_comm), 1e-10 * (1.0 + std::abs(want_comm)));
  }
}
