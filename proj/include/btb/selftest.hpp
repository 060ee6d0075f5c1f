#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "btb/convergence.hpp"
#include "btb/group.hpp"
#include "btb/json_io.hpp"
#include "btb/neighborhood.hpp"
#include "btb/norm_point.hpp"
#include "btb/sampling.hpp"

// Property suites shared by the command-line self test and the test binaries.
// Structural identities are recomputed through independent routes (minor
// valuations, shifted-inclusion adjacency, feasibility-based filtration
// levels) and compared exactly.
namespace btb {

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

namespace detail {

class SuiteCheck {
 public:
  void require(bool ok, const std::string& what) {
    ++count_;
    if (!ok && pass_) {
      pass_ = false;
      detail_ = what;
    }
  }
  SuiteResult result(std::string name) const {
    SuiteResult r;
    r.name = std::move(name);
    r.pass = pass_;
    r.detail = pass_ ? std::to_string(count_) + " checks" : detail_;
    return r;
  }

 private:
  bool pass_ = true;
  int count_ = 0;
  std::string detail_;
};

}  // namespace detail

// Divisor valuations recomputed from minors: the k-th partial sum equals the
// minimal valuation over all k x k minors.
inline std::vector<long> divisor_valuations_by_minors(const RatMatrix& C, long p) {
  const int m = C.rows();
  if (C.cols() != m) throw precondition_error("minor oracle needs a square matrix");
  auto subsets = [&](int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(k);
    for (int t = 0; t < k; ++t) s[t] = t;
    while (true) {
      out.push_back(s);
      int t = k - 1;
      while (t >= 0 && s[t] == m - k + t) --t;
      if (t < 0) break;
      ++s[t];
      for (int u = t + 1; u < k; ++u) s[u] = s[u - 1] + 1;
    }
    return out;
  };
  std::vector<long> partial(m + 1, 0);
  for (int k = 1; k <= m; ++k) {
    bool found = false;
    long best = 0;
    for (const auto& rows : subsets(k))
      for (const auto& cols : subsets(k)) {
        RatMatrix sub(k, k);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) sub.at(a, b) = C.at(rows[a], cols[b]);
        Rat dv = det(sub);
        if (dv == 0) continue;
        long v = valuation_nonzero(dv, p);
        if (!found || v < best) {
          best = v;
          found = true;
        }
      }
    if (!found) throw precondition_error("minor oracle needs an invertible matrix");
    partial[k] = best;
  }
  std::vector<long> d(m);
  for (int k = 1; k <= m; ++k) d[k - 1] = partial[k] - partial[k - 1];
  return d;
}

// Whether every column of B lies in the local span of the columns of A.
inline bool lattice_contains(const RatMatrix& A, const RatMatrix& B, long p) {
  RatMatrix X = solve(A, B);
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (!is_local_integer(X.at(i, j), p)) return false;
  return true;
}

// Adjacency recomputed from the definition: some rescaling M' of M satisfies
// pL < M' < L with both inclusions strict.
inline bool adjacent_by_inclusion(const LatticeClass& L, const LatticeClass& M, int window = 6) {
  if (!same_span(L, M)) return false;
  const long p = L.p();
  RatMatrix pl = L.basis().scaled(Rat(p));
  for (int t = -window; t <= window; ++t) {
    RatMatrix mt = M.basis().scaled(p_power(p, t));
    bool lower = lattice_contains(mt, pl, p) && !lattice_contains(pl, mt, p);
    bool upper = lattice_contains(L.basis(), mt, p) && !lattice_contains(mt, L.basis(), p);
    if (lower && upper) return true;
  }
  return false;
}

inline SuiteResult suite_local_forms(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 24; ++trial) {
    int n = int(rng.range(2, 4));
    int m = int(rng.range(1, n));
    LatticeClass L = random_lattice(rng, n, p, m);
    RatMatrix H = L.basis();
    c.require(local_hermite_form(H, p) == H, "canonical form must be idempotent");
    ProjElement W = random_unimodular(rng, m, p);
    c.require(local_hermite_form(H * W.matrix(), p) == H, "canonical form must not depend on the basis");
    c.require(lattice_contains(H, H, p), "self containment");

    ProjElement g = random_proj(rng, n, p);
    SmithLocal s = smith_local(g.matrix(), p);
    RatMatrix D(n, n);
    for (int t = 0; t < s.rank; ++t) D.at(t, t) = p_power(p, s.d[t]);
    c.require(s.U * D * s.V == g.matrix(), "diagonalization must reconstruct the matrix");
    c.require(valuation_nonzero(det(s.U), p) == 0 && valuation_nonzero(det(s.V), p) == 0,
              "diagonalization transforms must be invertible locally");
    c.require(std::is_sorted(s.d.begin(), s.d.end()), "divisor valuations must ascend");
    c.require(elementary_divisor_valuations(g.matrix(), p) == divisor_valuations_by_minors(g.matrix(), p),
              "divisor valuations must match the minor recomputation");
  }
  return c.result("local_forms");
}

inline SuiteResult suite_span_ops(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 16; ++trial) {
    int n = int(rng.range(2, 4));
    RatMatrix A = random_lattice(rng, n, p, n).basis();
    RatMatrix B = random_lattice(rng, n, p, n).basis();
    RatMatrix I = intersect_lattices(A, B, p);
    c.require(lattice_contains(A, I, p) && lattice_contains(B, I, p), "intersection must embed in both lattices");
    for (int probe = 0; probe < 6; ++probe) {
      std::vector<Rat> coef;
      for (int cidx = 0; cidx < n; ++cidx) coef.push_back(Rat(rng.range(-2, 2)));
      RatMatrix u(n, 1);
      for (int r = 0; r < n; ++r) {
        Rat acc(0);
        for (int cidx = 0; cidx < n; ++cidx) acc += coef[cidx] * A.at(r, cidx);
        u.at(r, 0) = acc;
      }
      if (lattice_contains(B, u, p))
        c.require(lattice_contains(I, u, p), "intersection must swallow common vectors");
    }

    int k = int(rng.range(1, n - 1));
    RatMatrix Wb = random_lattice(rng, n, p, k).basis();
    RatMatrix S = saturate_intersection(A, Wb, p);
    c.require(lattice_contains(A, S, p), "saturation must live inside the lattice");
    c.require(same_column_span_q(S, Wb), "saturation must keep the subspace");
    RatMatrix rest = complete_to_basis(A, S, p);
    RatMatrix full = RatMatrix::hstack(S, rest);
    c.require(lattice_contains(A, full, p) && lattice_contains(full, A, p),
              "saturated part plus completion must rebuild the lattice");
  }
  return c.result("span_ops");
}

inline SuiteResult suite_building(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      LatticeClass L = random_lattice(rng, n, p, n);
      std::vector<LatticeClass> nb = neighbors(L);
      Int expected(0);
      for (int k = 1; k < n; ++k) expected += gaussian_binomial(n, k, p);
      c.require(Int(nb.size()) == expected, "neighbor count must match the subspace count");
      for (std::size_t t = 0; t < nb.size(); t += 3) {
        c.require(adjacent(L, nb[t]) && adjacent(nb[t], L), "neighbors must be adjacent both ways");
        c.require(adjacent_by_inclusion(L, nb[t]), "adjacency must match the inclusion recomputation");
        std::vector<long> rp = rel_pos(L, nb[t]);
        std::vector<long> rq = rel_pos(nb[t], L);
        long hi = rp.back();
        std::vector<long> mirrored;
        for (auto it = rp.rbegin(); it != rp.rend(); ++it) mirrored.push_back(hi - *it);
        c.require(rq == mirrored, "relative position must mirror under swapping");
      }
      LatticeClass M = random_lattice(rng, n, p, n);
      c.require(adjacent(L, M) == adjacent_by_inclusion(L, M), "random pair adjacency must match the recomputation");
      c.require(adjacent(L, M) == adjacent(M, L), "adjacency must be symmetric");
      c.require(!adjacent(L, L), "adjacency must be irreflexive");
      c.require(rel_pos(L, L) == std::vector<long>(n, 0), "relative position to itself must vanish");
      c.require(is_simplex({L}), "singletons are simplices");
      if (nb.size() >= 2) {
        c.require(is_simplex({L, nb[0]}), "adjacent pairs are simplices");
        bool flag = adjacent(nb[0], nb[1]);
        c.require(is_simplex({L, nb[0], nb[1]}) == flag, "triangles are exactly pairwise adjacent triples");
      }
    }
  }
  return c.result("building");
}

inline SuiteResult suite_tree(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  (void)seed;
  long tp = p <= 5 ? p : 5;
  BuildingGraph g = ball(LatticeClass::standard(2, tp), 2);
  Int expected = Int(1) + Int(tp + 1) * (Int(tp) * tp - 1) / (tp - 1);
  c.require(Int(g.vertices.size()) == expected, "rank-two ball size must follow the tree formula");
  c.require(g.edges.size() + 1 == g.vertices.size(), "rank-two balls must be trees");
  std::vector<int> deg(g.vertices.size(), 0);
  for (const auto& [a, b] : g.edges) {
    ++deg[a];
    ++deg[b];
  }
  c.require(deg[g.center] == tp + 1, "interior vertices must have p+1 neighbors");
  return c.result("tree_shape");
}

inline SuiteResult suite_apartment(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    int n = int(rng.range(2, 4));
    LatticeClass D = random_diagonal_class(rng, n, p);
    ApartmentPoint x = apartment_coordinates(D);
    c.require(diagonal_class(x, p) == D, "coordinates must invert the diagonal embedding");
    c.require(project(x, x.support()) == x, "projection onto the full support is the identity");

    ApartmentPoint y = random_point(rng, n);
    bool covered = false;
    for (int i = 0; i < n; ++i)
      if (in_corner(i, y)) {
        covered = true;
        std::vector<ExtVal> chart = corner_chart(i, y);
        c.require(corner_chart_inv(i, n, chart) == y, "corner chart must round trip");
        int k = 0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          c.require(chart[k].is_pos_inf() == !y.has(j), "chart infinities must mark the missing coordinates");
          ++k;
        }
      }
    c.require(covered, "every point must lie in some corner");

    ApartmentPoint base = random_interior(rng, n);
    int ci = 0;
    for (int i = 0; i < n; ++i)
      if (in_corner(i, base)) ci = i;
    std::vector<Rat> dir(n);
    for (int i = 0; i < n; ++i) dir[i] = i == ci ? Rat(0) : Rat(rng.range(0, 2));
    RaySpec ray = RaySpec::make(base, dir);
    c.require(in_corner(ci, ray_point(ray, Rat(5))), "corners must absorb their escape directions");
    c.require(in_corner(ci, ray_limit(ray)), "corners must contain their ray limits");

    Rat t = Rat(rng.range(0, 4)) / 4;
    ApartmentPoint z = random_point(rng, n);
    ApartmentPoint w = contract(z, t);
    if (t == 0) c.require(w == z, "contraction at time zero is the identity");
    if (t == 1) c.require(w == ApartmentPoint::origin(n), "contraction at time one reaches the origin");
    if (t > 0 && t < 1) c.require(w.is_interior(), "contraction interior times produce interior points");
    for (int i = 0; i < n; ++i)
      if (in_corner(i, z) && t < 1)
        c.require(in_corner(i, w), "contraction must respect corners");
    MonomialElement perm = random_monomial(rng, n);
    for (long& v : perm.vals) v = 0;
    c.require(act_monomial(perm, contract(z, t)) == contract(act_monomial(perm, z), t),
              "contraction must commute with coordinate permutations");
  }
  return c.result("apartment_maps");
}

inline SuiteResult suite_filtration(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  (void)p;  // levels are coordinate data, independent of the prime
  Rng rng(seed);
  for (int trial = 0; trial < 30; ++trial) {
    int n = int(rng.range(2, 4));
    ApartmentPoint x = random_point(rng, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Root a = Root::make(i, j, n);
        c.require(filtration_level(a, x) == f_value_by_closure(a, x),
                  "filtration level must match the closure recomputation");
      }
    if (n >= 3) {
      int i = int(rng.range(0, n - 1)), j = i, k = i;
      while (j == i) j = int(rng.range(0, n - 1));
      while (k == i || k == j) k = int(rng.range(0, n - 1));
      ExtVal fa = filtration_level(Root::make(i, j, n), x);
      ExtVal fb = filtration_level(Root::make(j, k, n), x);
      ExtVal fc = filtration_level(Root::make(i, k, n), x);
      if (fa.is_finite() && fb.is_finite())
        c.require(!(ExtVal(fa.finite() + fb.finite()) < fc), "filtration must be subadditive on composable roots");
      if (fa.is_neg_inf() && !fb.is_pos_inf())
        c.require(fc.is_neg_inf(), "bottom levels must absorb under composition");
    }
  }
  return c.result("filtration");
}

inline SuiteResult suite_convergence(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 14; ++trial) {
    int n = int(rng.range(2, 4));
    RaySpec ray = random_ray(rng, n);
    ApartmentPoint lim = ray_limit(ray);
    std::vector<int> zero_set;
    for (int i = 0; i < n; ++i)
      if (ray.direction[i] == 0) zero_set.push_back(i);
    c.require(lim.support() == zero_set, "ray limits must keep exactly the non-escaping coordinates");
    for (const NeighborhoodSpec& spec : fundamental_neighborhoods(lim, 3)) {
      auto k0 = ray_tail_bound(ray, spec);
      c.require(k0.has_value(), "canonical neighborhoods of the limit must contain a ray tail");
      if (!k0) continue;
      c.require(nbhd_contains(spec, ray_point(ray, Rat(*k0))), "tail bound must enter the neighborhood");
      c.require(nbhd_contains(spec, ray_point(ray, Rat(*k0 + 3))), "tails must stay inside");
      if (*k0 > 0)
        c.require(!nbhd_contains(spec, ray_point(ray, Rat(*k0 - 1))), "tail bound must be exact");
    }

    LatticeSeqSpec s = random_seq(rng, n, p);
    LatticeClass lim_class = lattice_seq_limit(s);
    c.require(lattice_seq_limit_stabilized(s) == lim_class,
              "sequence limit must match the stabilized intersection recomputation");
    c.require(apartment_coordinates(lim_class) == ray_limit(coordinate_ray(s)),
              "sequence and coordinate limits must agree");
  }
  return c.result("convergence");
}

inline SuiteResult suite_norms(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    int n = int(rng.range(2, 4));
    LatticeClass L = random_lattice(rng, n, p, int(rng.range(1, n)));
    NormPoint nx = norm_from_lattice(L);
    c.require(norm_to_lattice(nx) == L, "unit ball must invert the lattice embedding");
    RatMatrix scaled = nx.basis().scaled(p_power(p, rng.range(-2, 2)));
    c.require(np_equal(nx, NormPoint::make(p, n, scaled, nx.weights())),
              "rescaling a representative must not move the class");
    LatticeClass M = random_lattice(rng, n, p, L.rank());
    bool same_class = same_span(L, M) && rel_pos(L, M) == std::vector<long>(L.rank(), 0);
    c.require(np_equal(nx, norm_from_lattice(M)) == same_class, "norm classes must separate lattice classes");

    ApartmentPoint x = random_point(rng, n);
    c.require(norm_to_apartment(norm_from_apartment(x, p)) == x, "apartment embedding must round trip");
    const RatMatrix& bb = nx.basis();
    std::vector<Rat> coef;
    for (int j = 0; j < bb.cols(); ++j) coef.push_back(Rat(rng.range(-3, 3)));
    RatMatrix u(n, 1);
    for (int r = 0; r < n; ++r) {
      Rat acc(0);
      for (int j = 0; j < bb.cols(); ++j) acc += coef[j] * bb.at(r, j);
      u.at(r, 0) = acc;
    }
    ExtVal v = np_eval(nx, u);
    if (v.is_finite()) {
      // Weights of a lattice embedding are its pivot valuations, so the unit
      // ball is the class representative itself.
      bool inside = lattice_contains(norm_to_lattice(nx).basis(), u, p);
      c.require((v.finite() >= 0) == inside, "norm sign must match unit ball membership");
    }
  }
  return c.result("norm_points");
}

inline SuiteResult suite_group(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    int n = int(rng.range(2, 4));
    ProjElement g = random_proj(rng, n, p);
    ProjElement h = random_proj(rng, n, p);
    LatticeClass L = random_lattice(rng, n, p, n);
    c.require(act(g, act(h, L)) == act(g * h, L), "class action must respect composition");
    NormPoint nx = random_norm_point(rng, n, p);
    c.require(np_equal(act(g, act(h, nx)), act(g * h, nx)), "norm action must respect composition");
    c.require(stabilizes(random_unimodular(rng, n, p), LatticeClass::standard(n, p)),
              "local units must fix the standard class");

    MonomialElement m = random_monomial(rng, n);
    ApartmentPoint x = random_point(rng, n);
    c.require(np_equal(act(ProjElement::make(m.to_matrix(p)), norm_from_apartment(x, p)),
                       norm_from_apartment(act_monomial(m, x), p)),
              "monomial action must match the coordinate action");

    RootGroupElement u = random_root(rng, n, p);
    RootGroupElement cu = conjugate_root_group(m, u, p);
    c.require(m.to_matrix(p) * u.to_matrix(n) * m.inverse_element().to_matrix(p) == cu.to_matrix(n),
              "conjugation formula must match the matrix product");
    bool inU = in_filtration_group(u, x, p);
    bool stab = stabilizes(ProjElement::make(u.to_matrix(n)), norm_from_apartment(x, p));
    c.require(inU == stab, "filtration membership must match the norm stabilizer");

    std::vector<int> I = random_support(rng, n);
    if (int(I.size()) < n && int(I.size()) >= 1) {
      RatMatrix bm(n, n);
      for (int cidx = 0; cidx < n; ++cidx)
        for (int r = 0; r < n; ++r) {
          bool rin = std::binary_search(I.begin(), I.end(), r);
          bool cin = std::binary_search(I.begin(), I.end(), cidx);
          if (cin && !rin) continue;
          bm.at(r, cidx) = Rat(rng.range(-3, 3));
        }
      if (det(bm) != 0) {
        ProjElement gi = ProjElement::make(bm);
        c.require(preserves_subspace(gi, I), "block triangular elements must preserve the subspace");
        ProjElement gr = restrict_element(gi, I);
        c.require(gr.n() == int(I.size()), "restriction must land in the smaller group");
        ProjElement gi2 = gi * gi;
        c.require(restrict_element(gi2, I) == gr * gr, "restriction must be a homomorphism");
      }
    }
    ApartmentPoint xp = random_point(rng, n);
    c.require(support_has_maximum({xp, project(xp, {xp.support()[0]})}),
              "nested supports must expose a maximum");
    if (n >= 2) {
      ApartmentPoint a = ApartmentPoint::make(n, {0}, {Rat(0)});
      ApartmentPoint b = ApartmentPoint::make(n, {1}, {Rat(0)});
      c.require(!support_has_maximum({a, b}), "incomparable supports must fail the maximum test");
    }
  }
  return c.result("group_action");
}

inline SuiteResult suite_json(long p, std::uint64_t seed) {
  detail::SuiteCheck c;
  Rng rng(seed);
  for (int trial = 0; trial < 15; ++trial) {
    int n = int(rng.range(2, 4));
    LatticeClass L = random_lattice(rng, n, p, int(rng.range(1, n)));
    c.require(lattice_from_json(lattice_json(L)) == L, "lattice classes must round trip through the wire format");
    ApartmentPoint x = random_point(rng, n);
    c.require(point_from_json(point_json(x)) == x, "points must round trip through the wire format");
    for (const NeighborhoodSpec& spec : fundamental_neighborhoods(x, 2))
      c.require(nbhd_json(nbhd_from_json(nbhd_json(spec))) == nbhd_json(spec),
                "neighborhood specs must round trip through the wire format");
    NormPoint nx = random_norm_point(rng, n, p);
    c.require(norm_json(norm_from_json(norm_json(nx))) == norm_json(nx),
              "norm points must round trip through the wire format");
    ProjElement g = random_proj(rng, n, p);
    c.require(proj_from_json(proj_json(g)) == g, "projective elements must round trip through the wire format");
    MonomialElement m = random_monomial(rng, n);
    c.require(monomial_from_json(monomial_json(m)) == m, "monomial elements must round trip through the wire format");
    RootGroupElement u = random_root(rng, n, p);
    RootGroupElement u2 = root_from_json(root_json(u));
    c.require(u2.i == u.i && u2.j == u.j && u2.omega == u.omega,
              "unipotent elements must round trip through the wire format");
    RaySpec ray = random_ray(rng, n);
    c.require(ray_json(ray_from_json(ray_json(ray))) == ray_json(ray),
              "rays must round trip through the wire format");
    LatticeSeqSpec s = random_seq(rng, n, p);
    c.require(seq_json(seq_from_json(seq_json(s))) == seq_json(s),
              "sequence specs must round trip through the wire format");
    json jj = lattice_json(L);
    c.require(canonical_hash(jj) == canonical_hash(lattice_json(lattice_from_json(jj))),
              "canonical hashes must be reproducible");
  }
  return c.result("json_wire");
}

inline std::vector<SuiteResult> run_selftests(long p, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  out.push_back(suite_local_forms(p, seed + 1));
  out.push_back(suite_span_ops(p, seed + 2));
  out.push_back(suite_building(p, seed + 3));
  out.push_back(suite_tree(p, seed + 4));
  out.push_back(suite_apartment(p, seed + 5));
  out.push_back(suite_filtration(p, seed + 6));
  out.push_back(suite_convergence(p, seed + 7));
  out.push_back(suite_norms(p, seed + 8));
  out.push_back(suite_group(p, seed + 9));
  out.push_back(suite_json(p, seed + 10));
  return out;
}

}  // namespace btb
