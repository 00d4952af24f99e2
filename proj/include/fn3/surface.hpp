#pragma once
// Centralizer torus of a strongly loxodromic curve, twist insertion,
// amalgamation and HNN gluing, assembly of a surface-group representation
// over a pants-decomposition graph, and coordinate extraction.
//
// Frame conventions. Every edge gluing identifies the two boundary curves
// through conjugators built from eigenbases that are transported from the
// local (per-pants) canonical eigenvectors by the pants frames. Local
// eigenvectors never move under global conjugation, so the zero-twist
// reference marking is conjugation covariant and the extracted record is
// invariant. The twist element is diagonal in the glued curve's basis taken
// in the a-side orientation: descending-modulus order of the slot_a matrix.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "fn3/classify.hpp"
#include "fn3/eigen3.hpp"
#include "fn3/error.hpp"
#include "fn3/mat3.hpp"
#include "fn3/pants.hpp"
#include "fn3/trace_algebra.hpp"

namespace fn3 {

// u: twist t = Re u, bend theta = Im u; v: bulge s = Re v, turn phi = Im v.
struct CentralizerParam {
  cx u{}, v{};
};

namespace detail {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Fold x into (-period/2, period/2].
inline double fold_half_open(double x, double period) {
  double t = std::remainder(x, period);
  if (t <= -0.5 * period) t += period;
  return t;
}

}  // namespace detail

// K depends on (u, v) only through the lattice generated by (2*pi*i, 0) and
// (pi*i, pi*i); the canonical representative has Im v in (-pi/2, pi/2] and
// Im u in (-pi, pi].
inline CentralizerParam canonical_param(CentralizerParam p) {
  const double iv = p.v.imag();
  const double fv = detail::fold_half_open(iv, detail::kPi);
  p.v = cx(p.v.real(), fv);
  const double iu = p.u.imag() + (fv - iv);  // coupled (pi*i, pi*i) shift
  p.u = cx(p.u.real(), detail::fold_half_open(iu, 2.0 * detail::kPi));
  return p;
}

// K = diag(e^{u-v}, e^{2v}, e^{-u-v}) in the eigenbasis of the glued curve;
// the exponents sum to zero, so det K = 1 by construction.
inline Mat3 centralizer_element(const CentralizerParam& p) {
  return Mat3::diag(std::exp(p.u - p.v), std::exp(2.0 * p.v), std::exp(-p.u - p.v));
}

namespace detail {

inline std::array<cx, 3> diag_in_basis(const Mat3& k, const Mat3& p) {
  const Mat3 kb = inverse(p) * k * p;
  double off = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) off = std::max(off, std::abs(kb(i, j)));
  if (off > 1e-8 * (1.0 + max_abs(kb)))
    throw_precondition("NotInCentralizer",
                       "matrix is not diagonal in the glued curve's eigenbasis");
  return {kb(0, 0), kb(1, 1), kb(2, 2)};
}

inline std::array<cx, 3> reverse_entries(const std::array<cx, 3>& k) {
  return {k[2], k[1], k[0]};
}

inline std::array<cx, 3> invert_entries(const std::array<cx, 3>& k) {
  return {1.0 / k[0], 1.0 / k[1], 1.0 / k[2]};
}

// (u, v) from the first two diagonal entries; principal logs put Im v in
// (-pi/2, pi/2] directly and Im u is folded into (-pi, pi].
inline CentralizerParam params_from_entries(const std::array<cx, 3>& k) {
  CentralizerParam p;
  p.v = 0.5 * std::log(k[1]);
  const cx u_raw = std::log(k[0]) + p.v;
  p.u = cx(u_raw.real(), fold_half_open(u_raw.imag(), 2.0 * kPi));
  return p;
}

// Cube root used for det-normalization of conjugators: real on the real
// axis (so real assemblies stay real), principal branch elsewhere.
inline cx cbrt_canonical(const cx& z) {
  if (std::abs(z.imag()) <= 1e-12 * std::abs(z.real()))
    return cx(std::cbrt(z.real()), 0.0);
  return std::pow(z, cx(1.0 / 3.0));
}

// G = c * pt * ps^{-1} with c fixing det G = 1.
inline Mat3 conjugator_from_frames(const Mat3& pt, const Mat3& ps) {
  const Mat3 g0 = pt * inverse(ps);
  const cx d = det(g0);
  if (std::abs(d) < 1e-12)
    throw_precondition("IllConditioned", "gluing conjugator is singular");
  return cbrt_canonical(1.0 / d) * g0;
}

}  // namespace detail

// Recover (u, v) from a matrix commuting with the curve whose EigenTriple is
// given (values + vectors in descending-modulus order). `wrapped`, when
// supplied, reports that a principal log landed within 1e-9 of the branch
// cut, i.e. the result was folded across the parameter lattice.
inline CentralizerParam extract_twist(const Mat3& k, const EigenTriple& basis,
                                      bool* wrapped = nullptr) {
  const cx t = basis.values[0] + basis.values[1] + basis.values[2];
  const cx tinv = basis.values[0] * basis.values[1] + basis.values[0] * basis.values[2] +
                  basis.values[1] * basis.values[2];
  if (!strongly_loxodromic_by_trace(t, tinv).strongly_loxodromic)
    throw_precondition("NotStronglyLoxodromic",
                       "twist extraction needs a strongly loxodromic curve");
  const std::array<cx, 3> kd = detail::diag_in_basis(k, basis.vectors);
  if (wrapped) {
    *wrapped = false;
    for (int i = 0; i < 2; ++i)
      if (detail::kPi - std::abs(std::arg(kd[i])) <= 1e-9) *wrapped = true;
  }
  return detail::params_from_entries(kd);
}

// det-1 conjugator moving source's sorted eigenbasis onto the target basis.
inline Mat3 matching_conjugator(const EigenTriple& target, const Mat3& source) {
  const EigenTriple es = eigen3(source);
  for (int k = 0; k < 3; ++k) {
    if (std::abs(es.values[k] - target.values[k]) >
        1e-6 * (1.0 + std::abs(target.values[k])))
      throw_precondition("EigenvalueMismatch",
                         "source spectrum does not match the target spectrum");
  }
  if (condition_estimate(target.vectors) > 1e8 || condition_estimate(es.vectors) > 1e8)
    throw_precondition("IllConditioned", "eigenvector frame nearly singular");
  return detail::conjugator_from_frames(target.vectors, es.vectors);
}

struct EdgeSpec {
  std::array<int, 2> a{};  // (pants id, slot)
  std::array<int, 2> b{};
  CentralizerParam glue;
};

struct PantsDecomposition {
  int genus = 0;  // 0 = derive from counts / allow sub-assembly
  int n_pants = 0;
  std::vector<EdgeSpec> edges;
};

// Closed decompositions must satisfy the Euler counts (2g-2 pants, 3g-3
// edges, every slot matched once); assemblies with unused boundary slots are
// allowed as sub-assemblies (e.g. the one-holed torus: one pants, one
// self-edge). Every slot may be used at most once and the graph must be
// connected.
inline void validate_decomposition(const PantsDecomposition& d) {
  if (d.n_pants <= 0) throw_input("InvalidDecomposition", "no pants");
  std::vector<std::array<int, 3>> used(d.n_pants, {0, 0, 0});
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    for (const auto& end : {d.edges[e].a, d.edges[e].b}) {
      if (end[0] < 0 || end[0] >= d.n_pants || end[1] < 0 || end[1] > 2)
        throw_input("InvalidDecomposition",
                    "edge " + std::to_string(e) + " references a bad slot");
      if (++used[end[0]][end[1]] > 1)
        throw_input("InvalidDecomposition",
                    "boundary slot used twice on pants " + std::to_string(end[0]));
    }
  }
  std::vector<char> seen(d.n_pants, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    const int p = q.front();
    q.pop_front();
    for (const EdgeSpec& ed : d.edges) {
      for (const int other : {ed.a[0] == p ? ed.b[0] : -1, ed.b[0] == p ? ed.a[0] : -1}) {
        if (other >= 0 && !seen[other]) {
          seen[other] = 1;
          q.push_back(other);
        }
      }
    }
  }
  for (int p = 0; p < d.n_pants; ++p)
    if (!seen[p]) throw_input("InvalidDecomposition", "pants graph is disconnected");

  int open_slots = 0;
  for (const auto& u : used)
    open_slots += 3 - u[0] - u[1] - u[2];
  if (open_slots == 0) {
    if (d.n_pants % 2 != 0)
      throw_input("InvalidDecomposition", "closed surface needs 2g-2 pants");
    const int g = d.n_pants / 2 + 1;
    if (d.genus != 0 && d.genus != g)
      throw_input("InvalidDecomposition", "genus field disagrees with pants count");
    if (static_cast<int>(d.edges.size()) != 3 * g - 3)
      throw_input("InvalidDecomposition", "closed surface needs 3g-3 edges");
  }
}

struct SurfaceRep {
  PantsDecomposition decomposition;
  std::vector<PantsRep> pants_reps;  // local frames
  std::vector<Mat3> frames;          // per-pants conjugator into base frame
  std::vector<int> parent_edge;      // tree edge placing each pants, -1 at root
  std::vector<char> edge_is_tree;    // per edge
  std::vector<Mat3> stable_letters;  // per edge; identity on tree edges
  std::vector<std::pair<std::string, Mat3>> generators;
};

namespace detail {

inline const Mat3& slot_matrix(const PantsRep& rep, int slot) {
  return slot == 0 ? rep.A : (slot == 1 ? rep.B : rep.C);
}

// (tr, tr-of-inverse) of a boundary slot, straight from the octuple.
inline std::pair<cx, cx> slot_traces(const TraceCoordsY& y, int slot) {
  return {y.v[slot], y.v[slot + 4]};
}

inline Mat3 transported_basis(const Mat3& frame, const Mat3& local, bool invert_curve) {
  const EigenTriple et = eigen3(invert_curve ? adjugate(local) : local);
  const bool ok = et.vector_ok[0] && et.vector_ok[1] && et.vector_ok[2];
  if (!ok || condition_estimate(et.vectors) > 1e8)
    throw_precondition("IllConditioned", "boundary eigenvector frame nearly singular");
  return frame * et.vectors;
}

inline Mat3 diag_from_entries(const std::array<cx, 3>& k) {
  return Mat3::diag(k[0], k[1], k[2]);
}

// Osborne balancing of B by a positive diagonal torus conjugation; A is
// diagonal and unchanged. Gauge-solved pants can carry entries ~1e4 and
// long word products then drown in roundoff; balancing bounds the scale
// while leaving every trace coordinate intact.
inline void balance_pants(PantsRep& rep) {
  const double floor_v = 1e-14 * std::max(1.0, max_abs(rep.B));
  for (int sweep = 0; sweep < 6; ++sweep) {
    for (int i = 0; i < 3; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        r += std::abs(rep.B(i, j));
        c += std::abs(rep.B(j, i));
      }
      if (r <= floor_v || c <= floor_v) continue;
      const double f = std::sqrt(c / r);
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        rep.B(i, j) *= f;
        rep.B(j, i) /= f;
      }
    }
  }
  rep.C = inverse_unimodular(rep.B * rep.A);
}

// The inserted twist is diagonal in the gluing target's basis; its entry
// order follows the a-side curve: the target carries the a-curve inverse
// exactly when the parent (or, on stable letters, the conjugated side) is
// the a-side, which reverses descending-modulus order.
inline std::array<cx, 3> inserted_diag(const CentralizerParam& glue, bool reversed) {
  const Mat3 k = centralizer_element(glue);
  std::array<cx, 3> d{k(0, 0), k(1, 1), k(2, 2)};
  return reversed ? reverse_entries(d) : d;
}

}  // namespace detail

// Scale-relative defect of each edge's gluing relation: tree edges must glue
// to mutually inverse boundaries, non-tree edges must satisfy
// D X_a^{-1} D^{-1} = X_b with the stored stable letter.
inline std::vector<double> relation_residuals(const SurfaceRep& rep) {
  const PantsDecomposition& d = rep.decomposition;
  std::vector<double> out;
  out.reserve(d.edges.size());
  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const EdgeSpec& ed = d.edges[e];
    const Mat3 xa = rep.frames[ed.a[0]] *
                    detail::slot_matrix(rep.pants_reps[ed.a[0]], ed.a[1]) *
                    inverse(rep.frames[ed.a[0]]);
    const Mat3 xb = rep.frames[ed.b[0]] *
                    detail::slot_matrix(rep.pants_reps[ed.b[0]], ed.b[1]) *
                    inverse(rep.frames[ed.b[0]]);
    double res;
    if (rep.edge_is_tree[e]) {
      res = distance(xa * xb, Mat3::identity());
    } else {
      const Mat3& dl = rep.stable_letters[e];
      res = distance(dl * adjugate(xa) * inverse(dl), xb);
    }
    out.push_back(res / (1.0 + max_abs(xa) + max_abs(xb)));
  }
  return out;
}

// Assemble a representation over the decomposition graph: BFS spanning tree
// from pants 0 with edges scanned in id order; tree edges conjugate the
// child so its glued boundary is exactly the parent boundary's inverse;
// non-tree edges (handle closures) produce stable letters D with
// D X_a^{-1} D^{-1} = X_b. The glue twist is inserted on every edge in the
// a-side eigenbasis convention.
inline SurfaceRep assemble_surface(const PantsDecomposition& d,
                                   const std::vector<TraceCoordsY>& coords, int seed) {
  validate_decomposition(d);
  if (static_cast<int>(coords.size()) != d.n_pants)
    throw_input("InvalidDecomposition", "coordinate list does not match pants count");

  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    const auto ta = detail::slot_traces(coords[d.edges[e].a[0]], d.edges[e].a[1]);
    const auto tb = detail::slot_traces(coords[d.edges[e].b[0]], d.edges[e].b[1]);
    const double sc = 1.0 + std::abs(ta.first) + std::abs(tb.second);
    if (std::abs(ta.first - tb.second) > 1e-6 * sc ||
        std::abs(ta.second - tb.first) > 1e-6 * sc)
      throw_precondition("SpectraMismatch",
                         "edge " + std::to_string(e) +
                             ": glued boundary spectra are not inverse to each other");
  }

  SurfaceRep rep;
  rep.decomposition = d;
  rep.pants_reps.reserve(d.n_pants);
  for (int i = 0; i < d.n_pants; ++i) {
    const int pseed = static_cast<int>(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(seed)) + 40503u * i) &
        0x3fffffffu);
    try {
      rep.pants_reps.push_back(build_pants(coords[i], pseed).first);
      detail::balance_pants(rep.pants_reps.back());
    } catch (const Error& err) {
      throw Error(err.kind(), err.name(), "pants " + std::to_string(i) + ": " + err.what());
    }
  }

  rep.frames.assign(d.n_pants, Mat3::identity());
  rep.parent_edge.assign(d.n_pants, -1);
  rep.edge_is_tree.assign(d.edges.size(), 0);
  rep.stable_letters.assign(d.edges.size(), Mat3::identity());

  std::vector<char> placed(d.n_pants, 0);
  placed[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
      const EdgeSpec& ed = d.edges[e];
      int parent_slot, child, child_slot;
      bool parent_is_a;
      if (ed.a[0] == p && !placed[ed.b[0]]) {
        parent_slot = ed.a[1], child = ed.b[0], child_slot = ed.b[1], parent_is_a = true;
      } else if (ed.b[0] == p && !placed[ed.a[0]]) {
        parent_slot = ed.b[1], child = ed.a[0], child_slot = ed.a[1], parent_is_a = false;
      } else {
        continue;
      }
      const Mat3& yp = detail::slot_matrix(rep.pants_reps[p], parent_slot);
      const Mat3& yc = detail::slot_matrix(rep.pants_reps[child], child_slot);
      const Mat3 pt = detail::transported_basis(rep.frames[p], yp, true);
      const Mat3 ps = detail::transported_basis(Mat3::identity(), yc, false);
      const Mat3 g = detail::conjugator_from_frames(pt, ps);
      const Mat3 k = detail::diag_from_entries(detail::inserted_diag(ed.glue, parent_is_a));
      rep.frames[child] = pt * k * inverse(pt) * g;
      rep.parent_edge[child] = static_cast<int>(e);
      rep.edge_is_tree[e] = 1;
      placed[child] = 1;
      queue.push_back(child);
    }
  }

  for (std::size_t e = 0; e < d.edges.size(); ++e) {
    if (rep.edge_is_tree[e]) continue;
    const EdgeSpec& ed = d.edges[e];
    const Mat3& ya = detail::slot_matrix(rep.pants_reps[ed.a[0]], ed.a[1]);
    const Mat3& yb = detail::slot_matrix(rep.pants_reps[ed.b[0]], ed.b[1]);
    const Mat3 psa = detail::transported_basis(rep.frames[ed.a[0]], ya, true);
    const Mat3 ptb = detail::transported_basis(rep.frames[ed.b[0]], yb, false);
    const Mat3 d0 = detail::conjugator_from_frames(ptb, psa);
    const Mat3 k = detail::diag_from_entries(detail::inserted_diag(ed.glue, true));
    rep.stable_letters[e] = ptb * k * inverse(ptb) * d0;
  }

  // verify every gluing relation
  const std::vector<double> res = relation_residuals(rep);
  for (std::size_t e = 0; e < res.size(); ++e)
    if (res[e] > 1e-8)
      throw_precondition("RelationResidual",
                         "edge " + std::to_string(e) + " gluing relation fails");

  for (int i = 0; i < d.n_pants; ++i) {
    const Mat3 fi = rep.frames[i], fi_inv = inverse(fi);
    const char* names[3] = {".A", ".B", ".C"};
    for (int s = 0; s < 3; ++s)
      rep.generators.emplace_back("P" + std::to_string(i) + names[s],
                                  fi * detail::slot_matrix(rep.pants_reps[i], s) * fi_inv);
  }
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (!rep.edge_is_tree[e])
      rep.generators.emplace_back("D" + std::to_string(e), rep.stable_letters[e]);
  return rep;
}

// Read the glue parameter of one edge back out of an assembled (or claimed)
// representation by comparing the actual conjugator against the zero-twist
// reference. `from_other_side` reads the same edge anchored at the opposite
// pants; the physical parameter is side independent.
inline CentralizerParam read_edge_twist(const SurfaceRep& rep, int e,
                                        bool from_other_side = false) {
  if (e < 0 || e >= static_cast<int>(rep.decomposition.edges.size()))
    throw_input("InvalidDecomposition", "no such edge");
  const EdgeSpec& ed = rep.decomposition.edges[e];
  std::array<cx, 3> dg;
  bool inserted_reversed;  // orientation of the inserted diag vs a-side order

  if (rep.edge_is_tree[e]) {
    const bool child_is_b = (rep.parent_edge[ed.b[0]] == e);
    const int pp = child_is_b ? ed.a[0] : ed.b[0];
    const int ps_ = child_is_b ? ed.a[1] : ed.b[1];
    const int cp = child_is_b ? ed.b[0] : ed.a[0];
    const int cs = child_is_b ? ed.b[1] : ed.a[1];
    const Mat3& yp = detail::slot_matrix(rep.pants_reps[pp], ps_);
    const Mat3& yc = detail::slot_matrix(rep.pants_reps[cp], cs);
    inserted_reversed = child_is_b;  // parent on the a-side
    if (!from_other_side) {
      const Mat3 pt = detail::transported_basis(rep.frames[pp], yp, true);
      const Mat3 ps = detail::transported_basis(Mat3::identity(), yc, false);
      const Mat3 g = detail::conjugator_from_frames(pt, ps);
      dg = detail::diag_in_basis(rep.frames[cp] * inverse(g), pt);
    } else {
      const Mat3 pt = detail::transported_basis(rep.frames[cp], yc, true);
      const Mat3 ps = detail::transported_basis(Mat3::identity(), yp, false);
      const Mat3 g = detail::conjugator_from_frames(pt, ps);
      dg = detail::diag_in_basis(rep.frames[pp] * inverse(g), pt);
    }
  } else {
    const Mat3& ya = detail::slot_matrix(rep.pants_reps[ed.a[0]], ed.a[1]);
    const Mat3& yb = detail::slot_matrix(rep.pants_reps[ed.b[0]], ed.b[1]);
    inserted_reversed = true;
    if (!from_other_side) {
      const Mat3 psa = detail::transported_basis(rep.frames[ed.a[0]], ya, true);
      const Mat3 ptb = detail::transported_basis(rep.frames[ed.b[0]], yb, false);
      const Mat3 d0 = detail::conjugator_from_frames(ptb, psa);
      dg = detail::diag_in_basis(rep.stable_letters[e] * inverse(d0), ptb);
    } else {
      const Mat3 psb = detail::transported_basis(rep.frames[ed.b[0]], yb, true);
      const Mat3 pta = detail::transported_basis(rep.frames[ed.a[0]], ya, false);
      const Mat3 d0 = detail::conjugator_from_frames(pta, psb);
      dg = detail::diag_in_basis(inverse(rep.stable_letters[e]) * inverse(d0), pta);
    }
  }

  // canonical side sees the inserted diag M directly; the opposite side sees
  // reverse(M)^{-1}
  std::array<cx, 3> m =
      from_other_side ? detail::reverse_entries(detail::invert_entries(dg)) : dg;
  if (inserted_reversed) m = detail::reverse_entries(m);
  return detail::params_from_entries(m);
}

struct EdgeRecord {
  int edge = 0;
  cx tr, tr_inv;  // glued curve traces, a-side orientation
  CentralizerParam glue;
};

struct PantsRecord {
  int pants = 0;
  ShapePair sigma;
  RootBranch root_choice = RootBranch::PlusBranch;
};

struct FnRecord {
  std::vector<PantsRecord> pants;
  std::vector<EdgeRecord> edges;
};

inline FnRecord extract_fn(const SurfaceRep& rep) {
  FnRecord rec;
  for (std::size_t i = 0; i < rep.pants_reps.size(); ++i) {
    PantsRecord pr;
    pr.pants = static_cast<int>(i);
    pr.sigma = {rep.pants_reps[i].coords.v[3], rep.pants_reps[i].coords.v[7]};
    pr.root_choice = rep.pants_reps[i].coords.root_choice;
    rec.pants.push_back(pr);
  }
  for (std::size_t e = 0; e < rep.decomposition.edges.size(); ++e) {
    EdgeRecord er;
    er.edge = static_cast<int>(e);
    const auto& end = rep.decomposition.edges[e].a;
    const auto tt = detail::slot_traces(rep.pants_reps[end[0]].coords, end[1]);
    er.tr = tt.first;
    er.tr_inv = tt.second;
    er.glue = read_edge_twist(rep, static_cast<int>(e));
    rec.edges.push_back(er);
  }
  return rec;
}

// Left-to-right product over signed 1-based generator indices; negative
// means inverse.
inline Mat3 evaluate_word(const SurfaceRep& rep, const std::vector<int>& word) {
  Mat3 m = Mat3::identity();
  for (const int id : word) {
    const int k = id > 0 ? id : -id;
    if (k < 1 || k > static_cast<int>(rep.generators.size()))
      throw_input("UnknownGenerator", "generator index " + std::to_string(id));
    const Mat3& g = rep.generators[k - 1].second;
    m = m * (id > 0 ? g : inverse_unimodular(g));
  }
  return m;
}

}  // namespace fn3
