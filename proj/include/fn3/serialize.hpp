#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fn3/error.hpp"
#include "fn3/goldman.hpp"
#include "fn3/real_forms.hpp"
#include "fn3/surface.hpp"

// Wire conventions shared by every module: complex scalars are two-element
// arrays [re, im]; 3x3 matrices are row-major nested arrays of complex
// scalars. Decoders validate shape and raise InputError on any mismatch so
// the CLI maps malformed files to exit code 2 uniformly.

namespace nlohmann {

template <>
struct adl_serializer<std::complex<double>> {
  static void to_json(json& j, const std::complex<double>& z) {
    j = json::array({z.real(), z.imag()});
  }
  static void from_json(const json& j, std::complex<double>& z) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
      fn3::throw_input("SchemaError", "complex scalar must be [re, im]");
    z = {j[0].get<double>(), j[1].get<double>()};
  }
};

}  // namespace nlohmann

namespace fn3 {

using json = nlohmann::json;

inline constexpr const char* kLibraryVersion = "0.1.0";

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw_input("ParseError", e.what());
  }
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_input("FileError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

// get<T> funneled through the error taxonomy so schema violations surface as
// InputError regardless of which nested decoder trips.
template <typename T>
T decode(const json& j) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw_input("SchemaError", e.what());
  }
}

inline const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw_input("SchemaError", std::string("missing key \"") + key + "\"");
  return j.at(key);
}

inline void to_json(json& j, const Mat3& m) {
  j = json::array();
  for (std::size_t r = 0; r < 3; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < 3; ++c) row.push_back(json(m(r, c)));
    j.push_back(std::move(row));
  }
}

inline void from_json(const json& j, Mat3& m) {
  if (!j.is_array() || j.size() != 3)
    throw_input("SchemaError", "matrix must be 3 rows of 3 complex entries");
  for (std::size_t r = 0; r < 3; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != 3)
      throw_input("SchemaError", "matrix must be 3 rows of 3 complex entries");
    for (std::size_t c = 0; c < 3; ++c) m(r, c) = row[c].get<cx>();
  }
}

inline void to_json(json& j, const TraceCoordsY& y) {
  j = json{{"y", y.v}, {"root_choice", to_string(y.root_choice)}};
}

inline void from_json(const json& j, TraceCoordsY& y) {
  const json& arr = require_key(j, "y");
  if (!arr.is_array() || arr.size() != 8)
    throw_input("SchemaError", "\"y\" must hold 8 complex entries");
  for (std::size_t i = 0; i < 8; ++i) y.v[i] = arr[i].get<cx>();
  const std::string b = require_key(j, "root_choice").get<std::string>();
  if (b == "plus")
    y.root_choice = RootBranch::PlusBranch;
  else if (b == "minus")
    y.root_choice = RootBranch::MinusBranch;
  else
    throw_input("SchemaError", "root_choice must be \"plus\" or \"minus\"");
}

inline void to_json(json& j, const PantsRep& rep) {
  j = json{{"A", rep.A},
           {"B", rep.B},
           {"C", rep.C},
           {"coords", rep.coords},
           {"irreducible", rep.irreducible_flag}};
}

inline void from_json(const json& j, PantsRep& rep) {
  rep.A = require_key(j, "A").get<Mat3>();
  rep.B = require_key(j, "B").get<Mat3>();
  rep.C = require_key(j, "C").get<Mat3>();
  rep.coords = require_key(j, "coords").get<TraceCoordsY>();
  rep.irreducible_flag = j.value("irreducible", true);
}

inline void to_json(json& j, const GoldmanParams& p) {
  j = json{{"lambda", p.lambda}, {"tau", p.tau}, {"s", p.s}, {"r", p.r}};
}

inline void from_json(const json& j, GoldmanParams& p) {
  const json& lam = require_key(j, "lambda");
  const json& tau = require_key(j, "tau");
  if (!lam.is_array() || lam.size() != 3 || !tau.is_array() || tau.size() != 3)
    throw_input("SchemaError", "lambda and tau must hold 3 reals each");
  for (std::size_t i = 0; i < 3; ++i) {
    p.lambda[i] = lam[i].get<double>();
    p.tau[i] = tau[i].get<double>();
  }
  p.s = j.value("s", 1.0);
  p.r = j.value("r", 1.0);
}

// A decomposition file carries the graph together with one trace octuple per
// pants: {"genus": g, "pants": [TraceCoordsY...], "edges": [{"a": [pid,
// slot], "b": [pid, slot], "u": [re, im], "v": [re, im]}]}.
inline json decomposition_to_json(const PantsDecomposition& d,
                                  const std::vector<TraceCoordsY>& coords) {
  json edges = json::array();
  for (const EdgeSpec& e : d.edges)
    edges.push_back(json{
        {"a", e.a}, {"b", e.b}, {"u", e.glue.u}, {"v", e.glue.v}});
  return json{{"genus", d.genus}, {"pants", coords}, {"edges", edges}};
}

inline std::pair<PantsDecomposition, std::vector<TraceCoordsY>>
decomposition_from_json(const json& j) {
  PantsDecomposition d;
  d.genus = decode<int>(require_key(j, "genus"));
  const auto coords = decode<std::vector<TraceCoordsY>>(require_key(j, "pants"));
  d.n_pants = static_cast<int>(coords.size());
  const json& edges = require_key(j, "edges");
  if (!edges.is_array()) throw_input("SchemaError", "\"edges\" must be an array");
  for (const json& ej : edges) {
    EdgeSpec e;
    const json& a = require_key(ej, "a");
    const json& b = require_key(ej, "b");
    if (!a.is_array() || a.size() != 2 || !b.is_array() || b.size() != 2)
      throw_input("SchemaError", "edge ends must be [pants, slot]");
    e.a = {a[0].get<int>(), a[1].get<int>()};
    e.b = {b[0].get<int>(), b[1].get<int>()};
    if (ej.contains("u")) e.glue.u = ej.at("u").get<cx>();
    if (ej.contains("v")) e.glue.v = ej.at("v").get<cx>();
    d.edges.push_back(e);
  }
  return {d, coords};
}

// A full representation file embeds the decomposition, the per-pants local
// solutions, the assembly frames, and the named generator list
// ("P{i}.A|B|C" then "D{e}" for handle closures).
inline json surface_to_json(const SurfaceRep& rep) {
  std::vector<TraceCoordsY> coords;
  coords.reserve(rep.pants_reps.size());
  for (const PantsRep& p : rep.pants_reps) coords.push_back(p.coords);

  json gens = json::array();
  for (const auto& g : rep.generators)
    gens.push_back(json{{"name", g.first}, {"matrix", g.second}});

  const std::vector<int> tree(rep.edge_is_tree.begin(), rep.edge_is_tree.end());
  return json{{"decomposition", decomposition_to_json(rep.decomposition, coords)},
              {"pants_reps", rep.pants_reps},
              {"frames", rep.frames},
              {"parent_edge", rep.parent_edge},
              {"edge_is_tree", tree},
              {"stable_letters", rep.stable_letters},
              {"generators", gens}};
}

inline SurfaceRep surface_from_json(const json& j) {
  SurfaceRep rep;
  auto [d, coords] = decomposition_from_json(require_key(j, "decomposition"));
  rep.decomposition = std::move(d);
  rep.pants_reps = decode<std::vector<PantsRep>>(require_key(j, "pants_reps"));
  rep.frames = decode<std::vector<Mat3>>(require_key(j, "frames"));
  rep.parent_edge = decode<std::vector<int>>(require_key(j, "parent_edge"));
  const auto tree = decode<std::vector<int>>(require_key(j, "edge_is_tree"));
  rep.edge_is_tree.assign(tree.begin(), tree.end());
  rep.stable_letters = decode<std::vector<Mat3>>(require_key(j, "stable_letters"));
  const json& gens = require_key(j, "generators");
  if (!gens.is_array()) throw_input("SchemaError", "\"generators\" must be an array");
  for (const json& gj : gens)
    rep.generators.emplace_back(decode<std::string>(require_key(gj, "name")),
                                require_key(gj, "matrix").get<Mat3>());
  if (rep.pants_reps.size() != coords.size())
    throw_input("SchemaError", "pants_reps does not match decomposition size");
  if (rep.frames.size() != rep.pants_reps.size() ||
      rep.parent_edge.size() != rep.pants_reps.size() ||
      rep.edge_is_tree.size() != rep.decomposition.edges.size() ||
      rep.stable_letters.size() != rep.decomposition.edges.size())
    throw_input("SchemaError", "assembly arrays disagree with the graph size");
  return rep;
}

inline void to_json(json& j, const NamedResidual& r) {
  j = json{{"name", r.name}, {"value", r.value}, {"pass", r.pass}};
}

inline void to_json(json& j, const SubgroupVerdict& v) {
  json passing = json::array();
  for (const SubgroupTag t : v.passing) passing.push_back(subgroup_name(t));
  j = json{{"tag", subgroup_name(v.tag)},
           {"passing", passing},
           {"evidence", v.evidence},
           {"note", v.note}};
}

inline void to_json(json& j, const CrossRatios& x) {
  j = json{{"X1", x.X1}, {"X2", x.X2}, {"X3", x.X3}, {"degenerate", x.degenerate}};
}

inline void to_json(json& j, const ShapePair& s) {
  j = json{{"sigma_plus", s.sigma_plus}, {"sigma_minus", s.sigma_minus}};
}

inline void to_json(json& j, const CommutatorQuadratic& q) {
  j = json{{"S", q.S},
           {"P", q.P},
           {"plus_root", q.plus_root},
           {"minus_root", q.minus_root}};
}

// Reproducibility contract: the report of any run embeds the library version
// and the full RunConfig, and equal configs produce byte-identical reports.
struct RunConfig {
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::map<std::string, int> sample_counts;
  std::string output;  // empty = stdout

  double tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }
  int samples(const std::string& suite, int fallback) const {
    const auto it = sample_counts.find(suite);
    return it == sample_counts.end() ? fallback : it->second;
  }
};

inline void validate_config(const RunConfig& c) {
  for (const auto& [name, val] : c.tolerances)
    if (!(val > 0.0))
      throw_input("InvalidConfig", "tolerance " + name + " must be positive");
  for (const auto& [suite, n] : c.sample_counts)
    if (n < 1)
      throw_input("InvalidConfig", "sample count " + suite + " must be positive");
}

inline void to_json(json& j, const RunConfig& c) {
  j = json{{"seed", c.seed},
           {"tolerances", c.tolerances},
           {"sample_counts", c.sample_counts},
           {"output", c.output}};
}

inline void from_json(const json& j, RunConfig& c) {
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("tolerances"))
    c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  if (j.contains("sample_counts"))
    c.sample_counts = j.at("sample_counts").get<std::map<std::string, int>>();
  c.output = j.value("output", std::string{});
  validate_config(c);
}

// Canonical dump: two-space indentation, sorted keys (the default object
// ordering), trailing newline. All report writers share this so identical
// data is identical bytes.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_input("FileError", "cannot write " + path);
  out << text;
}

}  // namespace fn3
