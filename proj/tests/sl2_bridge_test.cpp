// Squaring embedding, SL(2) normal forms from traces, and the shared
// shape-invariant branch formulas, checked against matrix-level oracles.
#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "fn3/eigen3.hpp"
#include "fn3/error.hpp"
#include "fn3/mat2.hpp"
#include "fn3/rng.hpp"
#include "fn3/sl2.hpp"
#include "fn3/trace_algebra.hpp"

using fn3::cx;
using fn3::Mat2;
using fn3::Mat3;

namespace {

// Gaussian 2x2 sample scaled to determinant one; retries near-singular draws.
Mat2 random_sl2(fn3::Rng& rng) {
  for (;;) {
    Mat2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = rng.cgauss();
    const cx d = det(m);
    if (std::abs(d) < 1e-3) continue;
    const cx s = std::sqrt(d);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) /= s;
    return m;
  }
}

Mat2 diag2(const cx& a, const cx& d) {
  Mat2 m;
  m(0, 0) = a;
  m(1, 1) = d;
  return m;
}

}  // namespace

TEST(PhiStar, PinnedImages) {
  const Mat3 id3 = fn3::phi_star(Mat2::identity());
  EXPECT_LE(fn3::distance(id3, Mat3::identity()), 1e-15);

  const Mat3 d = fn3::phi_star(diag2(2.0, 0.5));
  EXPECT_LE(fn3::distance(d, Mat3::diag(4.0, 1.0, 0.25)), 1e-15);

  Mat2 rot;
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  const Mat3 r = fn3::phi_star(rot);
  Mat3 want;
  want(0, 2) = -1.0;
  want(1, 1) = -1.0;
  want(2, 0) = -1.0;
  EXPECT_LE(fn3::distance(r, want), 1e-15);
  EXPECT_LE(std::abs(fn3::det(r) - 1.0), 1e-14);
}

TEST(PhiStar, HomomorphismOnRandomPairs) {
  fn3::Rng rng(41);
  for (int it = 0; it < 1000; ++it) {
    const Mat2 m = random_sl2(rng), n = random_sl2(rng);
    const Mat3 lhs = fn3::phi_star(m * n);
    const Mat3 rhs = fn3::phi_star(m) * fn3::phi_star(n);
    EXPECT_LE(fn3::distance(lhs, rhs), 1e-10);
  }
}

TEST(PhiStar, KernelCollapsesSign) {
  fn3::Rng rng(42);
  for (int it = 0; it < 100; ++it) {
    const Mat2 m = random_sl2(rng);
    Mat2 neg;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) neg(i, j) = -m(i, j);
    EXPECT_EQ(fn3::distance(fn3::phi_star(m), fn3::phi_star(neg)), 0.0);
  }
}

TEST(PhiStar, PreservesAntidiagonalFormUnderTranspose) {
  fn3::Rng rng(43);
  const Mat3 j = fn3::form_j();
  EXPECT_LE(fn3::distance(j * j, Mat3::identity()), 1e-15);
  for (int it = 0; it < 200; ++it) {
    const Mat3 a = fn3::phi_star(random_sl2(rng));
    EXPECT_LE(fn3::distance(fn3::transpose(a) * j * a, j), 1e-10);
    EXPECT_LE(std::abs(fn3::det(a) - 1.0), 1e-10);
  }
}

TEST(PhiStar, EigenvalueAndTraceLaw) {
  fn3::Rng rng(44);
  for (int it = 0; it < 200; ++it) {
    // Companion matrix with eigenvalue modulus bounded away from 1 keeps the
    // image spectrum l^2, 1, 1/l^2 simple.
    const cx lam = std::polar(rng.uniform(1.4, 2.5), rng.uniform(-3.1, 3.1));
    const cx t = lam + 1.0 / lam;
    Mat2 m;
    m(0, 0) = t;
    m(0, 1) = -1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 0.0;

    const Mat3 a = fn3::phi_star(m);
    EXPECT_LE(std::abs(fn3::trace(a) - (t * t - 1.0)), 1e-10 * (1.0 + std::norm(t)));

    std::array<cx, 3> want{lam * lam, cx(1.0), 1.0 / (lam * lam)};
    fn3::sort_eigenvalues(want);
    const auto got = fn3::eigen3(a).values;
    for (int k = 0; k < 3; ++k) {
      EXPECT_LE(std::abs(got[k] - want[k]), 1e-8 * (1.0 + std::abs(want[k])));
    }
  }
}

TEST(PhiStar, EigenvectorLawOnCompanionForm) {
  fn3::Rng rng(45);
  for (int it = 0; it < 200; ++it) {
    const cx lam = std::polar(rng.uniform(1.2, 3.0), rng.uniform(-3.1, 3.1));
    Mat2 m;
    m(0, 0) = lam + 1.0 / lam;
    m(0, 1) = -1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 0.0;
    // (lam, 1) spans the lam eigenline of the companion matrix.
    const fn3::Vec3 v = fn3::phi_vec(lam, 1.0);
    const fn3::Vec3 av = fn3::phi_star(m) * v;
    const fn3::Vec3 want = (lam * lam) * v;
    EXPECT_LE(fn3::norm2(av - want), 1e-9 * (1.0 + std::norm(lam)) * fn3::norm2(v));
  }
}

TEST(PhiStar, TraceSelfPairing) {
  fn3::Rng rng(46);
  for (int it = 0; it < 300; ++it) {
    const Mat3 a = fn3::phi_star(random_sl2(rng));
    const cx t = fn3::trace(a), ti = fn3::trace(fn3::adjugate(a));
    EXPECT_LE(std::abs(t - ti), 1e-10 * (1.0 + std::abs(t)));
  }
}

TEST(Sl2Pants, TracesReproduceInputs) {
  const auto p = fn3::sl2_pants_from_traces(-3.0, -3.0, -3.0);
  EXPECT_LE(std::abs(trace(p.ahat) + 3.0), 1e-12);
  EXPECT_LE(std::abs(trace(p.bhat) + 3.0), 1e-12);
  EXPECT_LE(std::abs(trace(p.ahat * p.bhat) + 3.0), 1e-12);
  EXPECT_LE(std::abs(p.commutator_trace - 52.0), 1e-10);
  EXPECT_FALSE(p.reducible);

  fn3::Rng rng(47);
  for (int it = 0; it < 300; ++it) {
    const cx x = rng.cgauss() * 2.0, y = rng.cgauss() * 2.0, z = rng.cgauss() * 2.0;
    const auto q = fn3::sl2_pants_from_traces(x, y, z);
    EXPECT_LE(std::abs(det(q.ahat) - 1.0), 1e-12);
    EXPECT_LE(std::abs(det(q.bhat) - 1.0), 1e-12);
    EXPECT_LE(std::abs(trace(q.ahat) - x), 1e-10 * (1.0 + std::abs(x)));
    EXPECT_LE(std::abs(trace(q.bhat) - y), 1e-10 * (1.0 + std::abs(y)));
    EXPECT_LE(std::abs(trace(q.ahat * q.bhat) - z), 1e-10 * (1.0 + std::abs(z)));

    const auto fricke = fn3::fricke_sl2(x, y, z);
    const double scale = 1.0 + std::abs(fricke.tr_comm);
    EXPECT_LE(std::abs(q.commutator_trace - fricke.tr_comm), 1e-9 * scale);
    const cx tr_ab = trace(inverse_unimodular(q.ahat) * q.bhat);
    EXPECT_LE(std::abs(tr_ab - fricke.tr_ainv_b), 1e-10 * (1.0 + std::abs(fricke.tr_ainv_b)));
  }
}

TEST(Sl2Pants, ReducibleFlagAtCommutatorTraceTwo) {
  const auto p = fn3::sl2_pants_from_traces(2.0, 2.0, 2.0);
  EXPECT_TRUE(p.reducible);
  EXPECT_LE(std::abs(p.commutator_trace - 2.0), 1e-12);
}

TEST(FuchsianShape, PinnedValues) {
  const auto s = fn3::fuchsian_shape(8.0, 8.0, 8.0);
  EXPECT_LE(std::abs(s.sigma - 79.0), 1e-11);
  EXPECT_LE(std::abs(s.tr_comm - 2703.0), 1e-9);

  const auto b = fn3::fuchsian_shape(3.0, 3.0, 3.0);
  EXPECT_LE(std::abs(b.sigma - 26.0), 1e-12);
}

TEST(FuchsianShape, RejectsNegativeAxisFactor) {
  try {
    fn3::fuchsian_shape(-5.0, 8.0, 8.0);
    FAIL() << "expected a branch-domain error";
  } catch (const fn3::Error& e) {
    EXPECT_EQ(e.name(), "DomainError");
    EXPECT_EQ(e.exit_code(), 3);
  }
}

TEST(FuchsianShape, MatchesEmbeddedTripleInvariants) {
  fn3::Rng rng(48);
  for (int it = 0; it < 200; ++it) {
    // Hyperbolic triple in the negative-trace normalization; the trace
    // product is negative, which selects the plus branch downstairs.
    const cx x = -rng.uniform(2.2, 6.0), y = -rng.uniform(2.2, 6.0), z = -rng.uniform(2.2, 6.0);
    const auto p = fn3::sl2_pants_from_traces(x, y, z);
    const Mat2 chat = inverse_unimodular(p.bhat * p.ahat);
    const Mat3 a = fn3::phi_star(p.ahat), b = fn3::phi_star(p.bhat), c = fn3::phi_star(chat);
    EXPECT_LE(fn3::distance(c * b * a, Mat3::identity()), 1e-10);

    const cx ta = fn3::trace(a), tb = fn3::trace(b), tc = fn3::trace(c);
    EXPECT_LE(std::abs(ta - (x * x - 1.0)), 1e-10 * (1.0 + std::norm(x)));

    const auto fs = fn3::fuchsian_shape(ta, tb, tc);
    const double sscale = 1.0 + std::abs(fs.sigma);

    // Closed form with the sign convention trace-product < 0.
    EXPECT_LT((x * y * z).real(), 0.0);  // three negative reals
    const cx z_ab = fn3::trace(p.ahat * p.bhat);
    EXPECT_LE(std::abs(fs.sigma - (ta + tb + tc + 1.0 - 2.0 * x * y * z_ab)), 1e-8 * sscale);

    const auto sp = fn3::shape_invariants(a, b);
    EXPECT_LE(std::abs(sp.sigma_plus - fs.sigma), 1e-8 * sscale);
    EXPECT_LE(std::abs(sp.sigma_minus - fs.sigma), 1e-8 * sscale);

    const cx comm = fn3::trace_commutator(a, b);
    EXPECT_LE(std::abs(comm - fs.tr_comm), 1e-8 * (1.0 + std::abs(fs.tr_comm)));
  }
}

TEST(ShapeQuadratic, PinnedRootsAndDoubleRoot) {
  const auto r = fn3::shape_quadratic_roots(8.0, 8.0, 8.0);
  EXPECT_LE(std::abs(r.first - 79.0), 1e-11);
  EXPECT_LE(std::abs(r.second + 29.0), 1e-11);

  const cx b(2.0, 1.0), c(-3.0, 0.5);
  const auto d = fn3::shape_quadratic_roots(-1.0, b, c);
  EXPECT_LE(std::abs(d.first - (b + c)), 1e-12);
  EXPECT_LE(std::abs(d.second - (b + c)), 1e-12);
}

TEST(ShapeQuadratic, RootsSolveQuadraticAndMatchFactorization) {
  fn3::Rng rng(49);
  for (int it = 0; it < 200; ++it) {
    const cx a = rng.cgauss() * 3.0, b = rng.cgauss() * 3.0, c = rng.cgauss() * 3.0;
    const auto r = fn3::shape_quadratic_roots(a, b, c);
    const double scale = 1.0 + std::norm(r.first) + std::norm(r.second);
    EXPECT_LE(std::abs(fn3::t2_evaluate(a, b, c, r.first)), 1e-8 * scale);
    EXPECT_LE(std::abs(fn3::t2_evaluate(a, b, c, r.second)), 1e-8 * scale);

    const auto f = fn3::branch_factorization(a, b, c);
    for (const cx root : {r.first, r.second}) {
      const double d = std::min(std::abs(root - f.t2_roots.first),
                                std::abs(root - f.t2_roots.second));
      EXPECT_LE(d, 1e-10 * (1.0 + std::abs(root)));
    }
  }
}

TEST(ShapeQuadratic, NegatedTraceTriplePicksOtherRoot) {
  fn3::Rng rng(50);
  for (int it = 0; it < 100; ++it) {
    const double x = -rng.uniform(2.2, 5.0), y = -rng.uniform(2.2, 5.0), z = -rng.uniform(2.2, 5.0);
    const cx a = x * x - 1.0, b = y * y - 1.0, c = z * z - 1.0;
    const auto roots = fn3::shape_quadratic_roots(a, b, c);

    const auto p0 = fn3::sl2_pants_from_traces(x, y, z);
    const auto p1 = fn3::sl2_pants_from_traces(-x, -y, -z);
    const cx s0 = fn3::shape_invariants(fn3::phi_star(p0.ahat), fn3::phi_star(p0.bhat)).sigma_plus;
    const cx s1 = fn3::shape_invariants(fn3::phi_star(p1.ahat), fn3::phi_star(p1.bhat)).sigma_plus;

    // Same boundary traces, opposite sign of the SL(2) trace product: the two
    // triples realize the two distinct roots.
    const double scale = 1.0 + std::abs(roots.first) + std::abs(roots.second);
    EXPECT_LE(std::abs(s0 - roots.first), 1e-8 * scale);
    EXPECT_LE(std::abs(s1 - roots.second), 1e-8 * scale);
    EXPECT_GT(std::abs(roots.first - roots.second), 1e-3);
  }
}

TEST(Continuation, StationaryPathReproducesDirectFormula) {
  const std::array<cx, 3> v{cx(8.0), cx(5.5), cx(4.0)};
  const auto track = fn3::shape_continuation({v, v, v});
  const auto direct = fn3::fuchsian_shape(v[0], v[1], v[2]);
  ASSERT_EQ(track.size(), 3u);
  for (const auto& s : track) {
    EXPECT_LE(std::abs(s.sigma - direct.sigma), 1e-12 * (1.0 + std::abs(direct.sigma)));
    EXPECT_LE(std::abs(s.tr_comm - direct.tr_comm), 1e-12 * (1.0 + std::abs(direct.tr_comm)));
  }
}

TEST(Continuation, LoopAroundBranchLocusSwapsRoot) {
  // Drive the first trace once around -1 while the product sweeps a full
  // turn; the tracked square root returns negated, landing on the other root.
  std::vector<std::array<cx, 3>> path;
  const int n = 48;
  for (int k = 0; k <= n; ++k) {
    const double th = 2.0 * 3.14159265358979323846 * double(k) / double(n);
    path.push_back({cx(-1.0) + 9.0 * std::polar(1.0, th), cx(8.0), cx(8.0)});
  }
  const auto track = fn3::shape_continuation(path);
  ASSERT_EQ(track.size(), path.size());
  EXPECT_LE(std::abs(track.front().sigma - 79.0), 1e-10);
  EXPECT_LE(std::abs(track.back().sigma + 29.0), 1e-8);
  EXPECT_LE(std::abs(track.back().tr_comm - 3.0), 1e-8);
}

TEST(Continuation, RejectsBranchLocusAndBadStart) {
  try {
    fn3::shape_continuation({{cx(8.0), cx(8.0), cx(8.0)}, {cx(-10.0), cx(-1.0), cx(8.0)}});
    FAIL() << "expected a branch-locus error";
  } catch (const fn3::Error& e) {
    EXPECT_EQ(e.name(), "DomainError");
  }
  try {
    fn3::shape_continuation({{cx(-5.0), cx(8.0), cx(8.0)}});
    FAIL() << "expected a branch-domain error at the start vertex";
  } catch (const fn3::Error& e) {
    EXPECT_EQ(e.name(), "DomainError");
  }
  EXPECT_THROW(fn3::shape_continuation({}), fn3::Error);
}
