#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "btb/convergence.hpp"
#include "btb/elements.hpp"
#include "btb/lattice.hpp"
#include "btb/neighborhood.hpp"
#include "btb/norm_point.hpp"

// JSON wire formats. Indices are 1-based on the wire and 0-based internally;
// rationals travel as strings "a/b" or "a" (plain JSON integers are accepted
// on input); matrices travel row-per-vector, so a lattice basis is a list of
// generating vectors while the internal storage is column-per-vector.
namespace btb {

using json = nlohmann::ordered_json;

inline const json& json_need(const json& j, const char* key) {
  if (!j.is_object()) throw parse_error("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(std::string("missing key \"") + key + "\"");
  return *it;
}

inline long json_long(const json& v, const char* what) {
  if (!v.is_number_integer()) throw parse_error(std::string(what) + " must be a JSON integer");
  return v.get<long>();
}

inline Rat json_rat(const json& v) {
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw parse_error("rational values must be strings like \"a/b\" or integers");
}

inline std::vector<Rat> json_rat_vector(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) throw parse_error(std::string(what) + " must be a nonempty array");
  std::vector<Rat> out;
  for (const auto& e : v) out.push_back(json_rat(e));
  return out;
}

// Rows of the JSON array are vectors; the returned matrix holds them as
// columns.
inline RatMatrix json_vectors(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) throw parse_error(std::string(what) + " must be a nonempty array of vectors");
  std::vector<std::vector<Rat>> rows;
  for (const auto& row : v) rows.push_back(json_rat_vector(row, what));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw parse_error(std::string(what) + " has ragged rows");
  RatMatrix m(int(rows[0].size()), int(rows.size()));
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (std::size_t r = 0; r < rows[0].size(); ++r) m.at(int(r), int(c)) = rows[c][r];
  return m;
}

inline json vectors_json(const RatMatrix& m) {
  json rows = json::array();
  for (int c = 0; c < m.cols(); ++c) {
    json row = json::array();
    for (int r = 0; r < m.rows(); ++r) row.push_back(rat_str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json matrix_json(const RatMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RatMatrix json_matrix(const json& v, const char* what) {
  return json_vectors(v, what).transpose();
}

inline json lattice_json(const LatticeClass& L) {
  json j;
  j["p"] = L.p();
  j["n"] = L.n();
  j["basis"] = vectors_json(L.basis());
  return j;
}

inline LatticeClass lattice_from_json(const json& j) {
  long p = json_long(json_need(j, "p"), "p");
  long n = json_long(json_need(j, "n"), "n");
  RatMatrix basis = json_vectors(json_need(j, "basis"), "basis");
  if (basis.rows() != n) throw parse_error("basis vectors do not match the stated dimension");
  return LatticeClass::make(int(n), p, basis);
}

inline json point_json(const ApartmentPoint& x) {
  json j;
  j["n"] = x.n();
  json sup = json::array();
  for (int i : x.support()) sup.push_back(i + 1);
  j["support"] = std::move(sup);
  json co = json::object();
  for (std::size_t k = 0; k < x.support().size(); ++k)
    co[std::to_string(x.support()[k] + 1)] = rat_str(x.coords()[k]);
  j["coords"] = std::move(co);
  return j;
}

inline ApartmentPoint point_from_json(const json& j) {
  long n = json_long(json_need(j, "n"), "n");
  const json& sup = json_need(j, "support");
  if (!sup.is_array()) throw parse_error("support must be an array");
  const json& co = json_need(j, "coords");
  if (!co.is_object()) throw parse_error("coords must be an object keyed by support index");
  std::vector<int> support;
  std::vector<Rat> coords;
  for (const auto& e : sup) {
    long i = json_long(e, "support entry");
    support.push_back(int(i - 1));
    auto it = co.find(std::to_string(i));
    if (it == co.end()) throw parse_error("coords must cover every support index");
    coords.push_back(json_rat(*it));
  }
  return ApartmentPoint::make(int(n), std::move(support), std::move(coords));
}

inline json nbhd_json(const NeighborhoodSpec& s) {
  json j;
  if (s.kind() == NeighborhoodSpec::Kind::corner) {
    json I = json::array();
    for (int i : s.support()) I.push_back(i + 1);
    j["I"] = std::move(I);
  }
  json box = json::array();
  for (const auto& [lo, hi] : s.box_part().intervals) box.push_back(json::array({rat_str(lo), rat_str(hi)}));
  j["box"] = std::move(box);
  return j;
}

inline NeighborhoodSpec nbhd_from_json(const json& j) {
  const json& box = json_need(j, "box");
  if (!box.is_array() || box.empty()) throw parse_error("box must be a nonempty array of intervals");
  std::vector<std::pair<Rat, Rat>> iv;
  for (const auto& e : box) {
    if (!e.is_array() || e.size() != 2) throw parse_error("box intervals must be pairs");
    iv.emplace_back(json_rat(e[0]), json_rat(e[1]));
  }
  BoxSpec b = BoxSpec::make(std::move(iv));
  if (j.is_object() && j.contains("I")) {
    std::vector<int> I;
    for (const auto& e : j.at("I")) I.push_back(int(json_long(e, "I entry") - 1));
    return NeighborhoodSpec::corner(std::move(I), std::move(b));
  }
  return NeighborhoodSpec::box(std::move(b));
}

inline json norm_json(const NormPoint& x) {
  json j;
  j["p"] = x.p();
  j["basis"] = vectors_json(x.basis());
  json w = json::array();
  for (const Rat& v : x.weights()) w.push_back(rat_str(v));
  j["weights"] = std::move(w);
  return j;
}

inline NormPoint norm_from_json(const json& j) {
  long p = json_long(json_need(j, "p"), "p");
  RatMatrix basis = json_vectors(json_need(j, "basis"), "basis");
  std::vector<Rat> w = json_rat_vector(json_need(j, "weights"), "weights");
  return NormPoint::make(p, basis.rows(), std::move(basis), std::move(w));
}

inline json proj_json(const ProjElement& g) {
  json j;
  j["matrix"] = matrix_json(g.matrix());
  return j;
}

inline ProjElement proj_from_json(const json& j) {
  return ProjElement::make(json_matrix(json_need(j, "matrix"), "matrix"));
}

inline json monomial_json(const MonomialElement& m) {
  json j;
  json perm = json::array();
  for (int i : m.perm) perm.push_back(i + 1);
  j["perm"] = std::move(perm);
  json vals = json::array();
  for (long v : m.vals) vals.push_back(v);
  j["vals"] = std::move(vals);
  return j;
}

inline MonomialElement monomial_from_json(const json& j) {
  std::vector<int> perm;
  for (const auto& e : json_need(j, "perm")) perm.push_back(int(json_long(e, "perm entry") - 1));
  std::vector<long> vals;
  for (const auto& e : json_need(j, "vals")) vals.push_back(json_long(e, "vals entry"));
  return MonomialElement::make(std::move(perm), std::move(vals));
}

inline json root_json(const RootGroupElement& u) {
  json j;
  j["i"] = u.i + 1;
  j["j"] = u.j + 1;
  j["omega"] = rat_str(u.omega);
  return j;
}

inline RootGroupElement root_from_json(const json& j) {
  long i = json_long(json_need(j, "i"), "i");
  long jj = json_long(json_need(j, "j"), "j");
  return RootGroupElement::make(int(i - 1), int(jj - 1), json_rat(json_need(j, "omega")));
}

inline json ray_json(const RaySpec& r) {
  json j;
  j["base"] = point_json(r.base);
  json d = json::array();
  for (const Rat& v : r.direction) d.push_back(rat_str(v));
  j["direction"] = std::move(d);
  return j;
}

inline RaySpec ray_from_json(const json& j) {
  ApartmentPoint base = point_from_json(json_need(j, "base"));
  std::vector<Rat> dir = json_rat_vector(json_need(j, "direction"), "direction");
  return RaySpec::make(std::move(base), std::move(dir));
}

inline json seq_json(const LatticeSeqSpec& s) {
  json j;
  j["p"] = s.p;
  j["n"] = s.n;
  json b = json::array();
  for (long v : s.b) b.push_back(v);
  j["base"] = std::move(b);
  json d = json::array();
  for (long v : s.d) d.push_back(v);
  j["slopes"] = std::move(d);
  return j;
}

inline LatticeSeqSpec seq_from_json(const json& j) {
  long p = json_long(json_need(j, "p"), "p");
  long n = json_long(json_need(j, "n"), "n");
  std::vector<long> b, d;
  for (const auto& e : json_need(j, "base")) b.push_back(json_long(e, "base entry"));
  for (const auto& e : json_need(j, "slopes")) d.push_back(json_long(e, "slopes entry"));
  return LatticeSeqSpec::make(p, int(n), std::move(b), std::move(d));
}

inline json graph_json(const BuildingGraph& g) {
  json j;
  j["p"] = g.p;
  j["n"] = g.n;
  j["radius"] = g.radius;
  j["center"] = g.center;
  json verts = json::array();
  for (const LatticeClass& v : g.vertices) verts.push_back(lattice_json(v));
  j["vertices"] = std::move(verts);
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
  j["edges"] = std::move(edges);
  return j;
}

inline json frame_json(const CommonFrame& f) {
  json j;
  j["frame"] = vectors_json(f.frame);
  json sub = json::array();
  for (int c : f.subset) sub.push_back(c + 1);
  j["subset"] = std::move(sub);
  json se = json::array();
  for (long e : f.sub_exponents) se.push_back(e);
  j["subset_exponents"] = std::move(se);
  json fe = json::array();
  for (long e : f.full_exponents) fe.push_back(e);
  j["full_exponents"] = std::move(fe);
  return j;
}

// Stable 12-hex-digit label for a JSON value: FNV-1a over the compact dump.
inline std::string canonical_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(12, '0');
  for (int k = 0; k < 12; ++k) out[11 - k] = hex[(h >> (4 * k)) & 0xf];
  return out;
}

// Graphviz rendering of a ball. Vertices are labeled by canonical hash; the
// returned sidecar maps each label back to the full class.
inline std::pair<std::string, json> graph_dot(const BuildingGraph& g) {
  std::string dot = "graph building_ball {\n  node [shape=box, fontname=\"monospace\"];\n";
  json sidecar = json::object();
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    json vj = lattice_json(g.vertices[k]);
    std::string h = canonical_hash(vj);
    sidecar[h] = std::move(vj);
    dot += "  v" + std::to_string(k) + " [label=\"" + h + "\"";
    if (int(k) == g.center) dot += ", style=bold";
    dot += "];\n";
  }
  for (const auto& [a, b] : g.edges)
    dot += "  v" + std::to_string(a) + " -- v" + std::to_string(b) + ";\n";
  dot += "}\n";
  return {std::move(dot), std::move(sidecar)};
}

}  // namespace btb
