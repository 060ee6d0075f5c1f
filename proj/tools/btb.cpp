// Command line front end. Every subcommand reads JSON payloads, computes with
// exact arithmetic, and writes a deterministic result: identical inputs and
// seed give byte-identical output. Exit codes: 0 success, 2 malformed input,
// 3 violated precondition, 1 anything else.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "btb/convergence.hpp"
#include "btb/group.hpp"
#include "btb/json_io.hpp"
#include "btb/lattice.hpp"
#include "btb/neighborhood.hpp"
#include "btb/norm_point.hpp"
#include "btb/selftest.hpp"

namespace {

using namespace btb;

struct Ctx {
  long p = 3;
  int n = 2;
  std::uint64_t seed = 1;
  bool force = false;
  std::string format;  // empty = per-command default
};

struct Opts {
  std::string first, second;   // positional JSON payloads
  std::string root_pair, point, element, values, subset, sidecar, nbhd;
  std::string t = "0";
  int radius = 0;
  int corner = 1;
  bool oracle = false;
};

json parse_payload(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string(what) + ": malformed JSON: " + e.what());
  }
}

// Enumeration commands blow up combinatorially; refuse desk-scale overruns
// unless the caller insists.
void guardrail(const Ctx& ctx, long p, int n) {
  if (!ctx.force && (n > 4 || p > 7))
    throw precondition_error(
        "guardrail: enumeration commands expect n <= 4 and p <= 7 (pass --force to override)");
}

std::string format_or(const Ctx& ctx, const char* dflt) {
  return ctx.format.empty() ? dflt : ctx.format;
}

void require_not_dot(const std::string& fmt) {
  if (fmt == "dot") throw parse_error("dot output is only defined for ball");
}

// Table output: one "key: value" line per object entry, one line per array
// element; strings print unquoted, everything else as compact JSON.
std::string scalar_str(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_table(const json& v) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      std::cout << it.key() << ": " << scalar_str(it.value()) << "\n";
  } else if (v.is_array()) {
    for (const json& e : v) std::cout << scalar_str(e) << "\n";
  } else {
    std::cout << scalar_str(v) << "\n";
  }
}

void emit(const Ctx& ctx, const json& value) {
  std::string fmt = format_or(ctx, "json");
  require_not_dot(fmt);
  if (fmt == "table")
    print_table(value);
  else
    std::cout << value.dump(2) << "\n";
}

enum class ElemKind { projective, monomial, root };

ElemKind detect_elem(const json& j) {
  if (j.contains("matrix")) return ElemKind::projective;
  if (j.contains("perm")) return ElemKind::monomial;
  if (j.contains("omega")) return ElemKind::root;
  throw parse_error("element JSON must carry matrix, perm/vals, or i/j/omega");
}

enum class TargetKind { lattice, apartment, norm };

TargetKind detect_target(const json& j) {
  if (j.contains("weights")) return TargetKind::norm;
  if (j.contains("basis")) return TargetKind::lattice;
  if (j.contains("support")) return TargetKind::apartment;
  throw parse_error("point JSON must be a lattice class, apartment point, or norm point");
}

// Realize any element as a projective matrix; monomials need the prime and
// root group elements the ambient dimension.
ProjElement elem_to_proj(ElemKind kind, const json& j, long p, int n) {
  switch (kind) {
    case ElemKind::projective:
      return proj_from_json(j);
    case ElemKind::monomial:
      return ProjElement::make(monomial_from_json(j).to_matrix(p));
    default:
      return ProjElement::make(root_from_json(j).to_matrix(n));
  }
}

std::pair<int, int> parse_root_pair(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma != std::string::npos) {
    try {
      int i = std::stoi(text.substr(0, comma));
      int j = std::stoi(text.substr(comma + 1));
      return {i - 1, j - 1};
    } catch (const std::exception&) {
    }
  }
  throw parse_error("--root expects two comma-separated 1-based indices");
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  try {
    while (pos < text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      out.push_back(std::stoi(text.substr(pos, next - pos)) - 1);
      pos = next + 1;
    }
  } catch (const std::exception&) {
    throw parse_error("--subset expects comma-separated 1-based indices");
  }
  if (out.empty()) throw parse_error("--subset expects at least one index");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int run_ball(const Ctx& ctx, const Opts& o) {
  if (o.radius < 0) throw precondition_error("radius must be non-negative");
  LatticeClass center = o.first.empty() ? LatticeClass::standard(ctx.n, ctx.p)
                                        : lattice_from_json(parse_payload(o.first, "center"));
  guardrail(ctx, center.p(), center.n());
  BuildingGraph g = ball(center, o.radius);
  std::string fmt = format_or(ctx, "dot");
  if (fmt == "dot") {
    auto [dot, sidecar] = graph_dot(g);
    std::cout << dot;
    if (o.sidecar.empty()) {
      std::cerr << sidecar.dump(2) << "\n";
    } else {
      std::ofstream out(o.sidecar);
      if (!out) throw error("cannot write sidecar file: " + o.sidecar);
      out << sidecar.dump(2) << "\n";
    }
  } else if (fmt == "table") {
    json summary{{"p", g.p},
                 {"n", g.n},
                 {"radius", g.radius},
                 {"vertices", g.vertices.size()},
                 {"edges", g.edges.size()}};
    print_table(summary);
  } else {
    std::cout << graph_json(g).dump(2) << "\n";
  }
  return 0;
}

int run_selftest(const Ctx& ctx) {
  std::vector<SuiteResult> results = run_selftests(ctx.p, ctx.seed);
  bool all = true;
  std::string fmt = format_or(ctx, "table");
  require_not_dot(fmt);
  json arr = json::array();
  for (const SuiteResult& s : results) {
    all = all && s.pass;
    if (fmt == "table")
      std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << ": " << s.detail << "\n";
    else
      arr.push_back(json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  }
  if (fmt != "table") std::cout << arr.dump(2) << "\n";
  return all ? 0 : 1;
}

int run_act(const Ctx& ctx, const Opts& o) {
  json ej = parse_payload(o.element, "--element");
  json tj = parse_payload(o.point, "--on");
  ElemKind ek = detect_elem(ej);
  switch (detect_target(tj)) {
    case TargetKind::lattice: {
      LatticeClass L = lattice_from_json(tj);
      emit(ctx, lattice_json(act(elem_to_proj(ek, ej, L.p(), L.n()), L)));
      return 0;
    }
    case TargetKind::norm: {
      NormPoint nx = norm_from_json(tj);
      emit(ctx, norm_json(act(elem_to_proj(ek, ej, nx.p(), nx.n()), nx)));
      return 0;
    }
    default: {
      if (ek != ElemKind::monomial)
        throw precondition_error(
            "only monomial elements act on apartment coordinates; embed the point as a norm first");
      emit(ctx, point_json(act_monomial(monomial_from_json(ej), point_from_json(tj))));
      return 0;
    }
  }
}

int run_stabilizes(const Ctx& ctx, const Opts& o) {
  json ej = parse_payload(o.element, "--element");
  json tj = parse_payload(o.point, "--point");
  ElemKind ek = detect_elem(ej);
  switch (detect_target(tj)) {
    case TargetKind::lattice: {
      LatticeClass L = lattice_from_json(tj);
      emit(ctx, json{{"stabilizes", stabilizes(elem_to_proj(ek, ej, L.p(), L.n()), L)}});
      return 0;
    }
    case TargetKind::norm: {
      NormPoint nx = norm_from_json(tj);
      emit(ctx, json{{"stabilizes", stabilizes(elem_to_proj(ek, ej, nx.p(), nx.n()), nx)}});
      return 0;
    }
    default: {
      ApartmentPoint x = point_from_json(tj);
      if (ek == ElemKind::root) {
        // Root group elements get the filtration answer plus the level.
        RootGroupElement u = root_from_json(ej);
        emit(ctx, json{{"stabilizes", in_filtration_group(u, x, ctx.p)},
                       {"level", filtration_level(Root::make(u.i, u.j, x.n()), x).str()}});
        return 0;
      }
      NormPoint nx = norm_from_apartment(x, ctx.p);
      emit(ctx, json{{"stabilizes", stabilizes(elem_to_proj(ek, ej, ctx.p, x.n()), nx)}});
      return 0;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  Opts o;

  CLI::App app{"Exact computations in the lattice-class building and its compactified apartments"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--p", ctx.p, "prime (env BTB_P, default 3)")->envname("BTB_P");
  app.add_option("--n", ctx.n, "ambient dimension for default inputs")->capture_default_str();
  app.add_option("--seed", ctx.seed, "sampling seed for selftest")->capture_default_str();
  app.add_flag("--force", ctx.force, "override the n <= 4, p <= 7 guardrail");
  app.add_option("--format", ctx.format, "output format: json, dot (ball only), table")
      ->check(CLI::IsMember({"json", "dot", "table"}));

  CLI::App* c_ball =
      app.add_subcommand("ball", "graph of the ball around a class (default: DOT + sidecar on stderr)");
  c_ball->add_option("center", o.first, "center class JSON (default: standard class)");
  c_ball->add_option("--radius", o.radius, "ball radius")->required();
  c_ball->add_option("--sidecar", o.sidecar, "write the DOT label sidecar to a file");

  CLI::App* c_adjacent = app.add_subcommand("adjacent", "adjacency and relative position of two classes");
  c_adjacent->add_option("first", o.first, "lattice class JSON")->required();
  c_adjacent->add_option("second", o.second, "lattice class JSON")->required();

  CLI::App* c_neighbors = app.add_subcommand("neighbors", "all classes adjacent to one class");
  c_neighbors->add_option("class", o.first, "lattice class JSON (default: standard class)");

  CLI::App* c_simplex = app.add_subcommand("simplex", "test whether classes are pairwise adjacent");
  c_simplex->add_option("classes", o.first, "JSON array of lattice classes")->required();

  CLI::App* c_phi = app.add_subcommand("phi", "apartment coordinates of a diagonal class");
  c_phi->add_option("class", o.first, "lattice class JSON")->required();

  CLI::App* c_phi_inv = app.add_subcommand("phi-inv", "diagonal class with the given coordinates");
  c_phi_inv->add_option("point", o.first, "apartment point JSON with integer coordinates")->required();

  CLI::App* c_limit_ray = app.add_subcommand("limit-ray", "boundary limit of an apartment ray");
  c_limit_ray->add_option("ray", o.first, "ray JSON {base, direction}")->required();

  CLI::App* c_limit_lat =
      app.add_subcommand("limit-lattices", "limit class of a diagonal lattice sequence");
  c_limit_lat->add_option("sequence", o.first, "sequence JSON {p, n, base, slopes}")->required();

  CLI::App* c_f_value = app.add_subcommand("f-value", "filtration level of a root at a point");
  c_f_value->add_option("--root", o.root_pair, "1-based pair i,j")->required();
  c_f_value->add_option("--point", o.point, "apartment point JSON")->required();
  c_f_value->add_flag("--oracle", o.oracle, "recompute via the closure feasibility oracle");

  CLI::App* c_nbhd = app.add_subcommand("nbhd-contains", "membership of a point in a neighborhood spec");
  c_nbhd->add_option("--nbhd", o.nbhd, "neighborhood JSON (box or corner)")->required();
  c_nbhd->add_option("--point", o.point, "apartment point JSON")->required();

  CLI::App* c_chart = app.add_subcommand("chart", "corner chart values of a point");
  c_chart->add_option("--corner", o.corner, "1-based corner index")->required();
  c_chart->add_option("--point", o.point, "apartment point JSON")->required();

  CLI::App* c_chart_inv = app.add_subcommand("chart-inv", "point with the given corner chart values");
  c_chart_inv->add_option("--corner", o.corner, "1-based corner index")->required();
  c_chart_inv->add_option("--values", o.values, "JSON array of extended values")->required();

  CLI::App* c_contract = app.add_subcommand("contract", "contraction of a point toward the origin");
  c_contract->add_option("--point", o.point, "apartment point JSON")->required();
  c_contract->add_option("--t", o.t, "parameter in [0,1]")->required();

  CLI::App* c_act = app.add_subcommand("act", "apply a group element to a class, point, or norm");
  c_act->add_option("--element", o.element, "element JSON (matrix, monomial, or root)")->required();
  c_act->add_option("--on", o.point, "target JSON (lattice class, apartment point, or norm)")->required();

  CLI::App* c_stab = app.add_subcommand("stabilizes", "test whether an element fixes a point");
  c_stab->add_option("--element", o.element, "element JSON (matrix, monomial, or root)")->required();
  c_stab->add_option("--point", o.point, "target JSON (lattice class, apartment point, or norm)")
      ->required();

  CLI::App* c_frame =
      app.add_subcommand("common-apartment", "common frame of a lower-rank and a full-rank class");
  c_frame->add_option("first", o.first, "lower-rank lattice class JSON")->required();
  c_frame->add_option("second", o.second, "full-rank lattice class JSON")->required();

  CLI::App* c_restrict = app.add_subcommand("restrict", "restrict a subspace-preserving element");
  c_restrict->add_option("--element", o.element, "matrix element JSON")->required();
  c_restrict->add_option("--subset", o.subset, "comma-separated 1-based coordinate indices")->required();

  CLI::App* c_selftest = app.add_subcommand("selftest", "run all property suites with the configured seed");

  try {
    app.parse(argc, argv);
    if (!is_prime(ctx.p)) throw precondition_error("p must be prime");
    if (!ctx.force && (ctx.n < 2 || ctx.n > 4))
      throw precondition_error("guardrail: n outside 2..4 (pass --force to override)");
    if (ctx.n < 1) throw precondition_error("n must be positive");
    CLI::App* sub = app.get_subcommands().front();

    if (sub == c_ball) return run_ball(ctx, o);

    if (sub == c_adjacent) {
      LatticeClass a = lattice_from_json(parse_payload(o.first, "first class"));
      LatticeClass b = lattice_from_json(parse_payload(o.second, "second class"));
      json rp = json::array();
      for (long v : rel_pos(a, b)) rp.push_back(v);
      emit(ctx, json{{"adjacent", adjacent(a, b)}, {"rel_pos", rp}});
      return 0;
    }

    if (sub == c_neighbors) {
      LatticeClass L = o.first.empty() ? LatticeClass::standard(ctx.n, ctx.p)
                                       : lattice_from_json(parse_payload(o.first, "class"));
      guardrail(ctx, L.p(), L.n());
      json out = json::array();
      for (const LatticeClass& m : neighbors(L)) out.push_back(lattice_json(m));
      emit(ctx, out);
      return 0;
    }

    if (sub == c_simplex) {
      json arr = parse_payload(o.first, "classes");
      if (!arr.is_array()) throw parse_error("simplex expects a JSON array of lattice classes");
      std::vector<LatticeClass> classes;
      for (const json& e : arr) classes.push_back(lattice_from_json(e));
      emit(ctx, json{{"simplex", is_simplex(classes)}});
      return 0;
    }

    if (sub == c_phi) {
      LatticeClass L = lattice_from_json(parse_payload(o.first, "class"));
      emit(ctx, point_json(apartment_coordinates(L)));
      return 0;
    }

    if (sub == c_phi_inv) {
      ApartmentPoint x = point_from_json(parse_payload(o.first, "point"));
      emit(ctx, lattice_json(diagonal_class(x, ctx.p)));
      return 0;
    }

    if (sub == c_limit_ray) {
      emit(ctx, point_json(ray_limit(ray_from_json(parse_payload(o.first, "ray")))));
      return 0;
    }

    if (sub == c_limit_lat) {
      LatticeSeqSpec s = seq_from_json(parse_payload(o.first, "sequence"));
      LatticeClass lim = lattice_seq_limit(s);
      emit(ctx, json{{"limit", lattice_json(lim)},
                     {"coordinates", point_json(apartment_coordinates(lim))}});
      return 0;
    }

    if (sub == c_f_value) {
      auto [i, j] = parse_root_pair(o.root_pair);
      ApartmentPoint x = point_from_json(parse_payload(o.point, "--point"));
      Root a = Root::make(i, j, x.n());
      ExtVal v = o.oracle ? f_value_by_closure(a, x) : filtration_level(a, x);
      emit(ctx, json(v.str()));
      return 0;
    }

    if (sub == c_nbhd) {
      NeighborhoodSpec spec = nbhd_from_json(parse_payload(o.nbhd, "--nbhd"));
      ApartmentPoint x = point_from_json(parse_payload(o.point, "--point"));
      emit(ctx, json{{"contains", nbhd_contains(spec, x)}});
      return 0;
    }

    if (sub == c_chart) {
      ApartmentPoint x = point_from_json(parse_payload(o.point, "--point"));
      json out = json::array();
      for (const ExtVal& v : corner_chart(o.corner - 1, x)) out.push_back(v.str());
      emit(ctx, out);
      return 0;
    }

    if (sub == c_chart_inv) {
      json arr = parse_payload(o.values, "--values");
      if (!arr.is_array()) throw parse_error("--values expects a JSON array of extended values");
      std::vector<ExtVal> vals;
      for (const json& e : arr) vals.push_back(ExtVal::parse(scalar_str(e)));
      emit(ctx, point_json(corner_chart_inv(o.corner - 1, int(vals.size()) + 1, vals)));
      return 0;
    }

    if (sub == c_contract) {
      ApartmentPoint x = point_from_json(parse_payload(o.point, "--point"));
      emit(ctx, point_json(contract(x, parse_rat(o.t))));
      return 0;
    }

    if (sub == c_act) return run_act(ctx, o);
    if (sub == c_stab) return run_stabilizes(ctx, o);

    if (sub == c_frame) {
      LatticeClass x = lattice_from_json(parse_payload(o.first, "first class"));
      LatticeClass y = lattice_from_json(parse_payload(o.second, "second class"));
      CommonFrame f = common_frame(x, y);
      json out = frame_json(f);
      out["verified"] = frame_matches(f, x, y);
      emit(ctx, out);
      return 0;
    }

    if (sub == c_restrict) {
      json ej = parse_payload(o.element, "--element");
      if (detect_elem(ej) != ElemKind::projective)
        throw parse_error("restrict expects a matrix element");
      ProjElement g = proj_from_json(ej);
      std::vector<int> I = parse_index_list(o.subset);
      if (I.front() < 0 || I.back() >= g.n())
        throw precondition_error("subset indices must lie in 1..n");
      bool ok = preserves_subspace(g, I);
      json out{{"preserves", ok}};
      out["restriction"] = ok ? proj_json(restrict_element(g, I)) : json(nullptr);
      emit(ctx, out);
      return 0;
    }

    if (sub == c_selftest) return run_selftest(ctx);

    throw parse_error("unknown subcommand");
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
