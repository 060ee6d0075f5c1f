#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "btb/lattice.hpp"
#include "btb/neighborhood.hpp"

namespace btb {

// Straight ray x(k) = base - k * direction of interior points. The direction
// is stored modulo constants with minimum entry zero, so the coordinates
// with positive entries are exactly the ones escaping to the boundary.
struct RaySpec {
  ApartmentPoint base;  // interior
  std::vector<Rat> direction;

  static RaySpec make(ApartmentPoint base, std::vector<Rat> dir) {
    if (!base.is_interior()) throw precondition_error("ray base must be interior");
    if (int(dir.size()) != base.n()) throw precondition_error("direction size mismatch");
    Rat lo = *std::min_element(dir.begin(), dir.end());
    for (Rat& v : dir) v -= lo;
    return RaySpec{std::move(base), std::move(dir)};
  }
};

inline ApartmentPoint ray_point(const RaySpec& r, const Rat& k) {
  std::vector<Rat> coords(r.base.n());
  for (int i = 0; i < r.base.n(); ++i) coords[i] = r.base.coord(i) - k * r.direction[i];
  return ApartmentPoint::interior(r.base.n(), std::move(coords));
}

// Limit of the ray in the compactified apartment: the coordinates that do
// not escape survive, restricted and renormalized. A constant ray converges
// to its base point.
inline ApartmentPoint ray_limit(const RaySpec& r) {
  std::vector<int> support;
  std::vector<Rat> coords;
  for (int i = 0; i < r.base.n(); ++i)
    if (r.direction[i] == 0) {
      support.push_back(i);
      coords.push_back(r.base.coord(i));
    }
  return ApartmentPoint::make(r.base.n(), std::move(support), std::move(coords));
}

// Decreasing sequence of full-rank diagonal lattices M_k spanned by
// p^{b_i + k d_i} e_i, with slopes d_i >= 0 normalized to minimum zero
// (a global slope shift only rescales every class).
struct LatticeSeqSpec {
  long p = 2;
  int n = 1;
  std::vector<long> b;
  std::vector<long> d;

  static LatticeSeqSpec make(long p, int n, std::vector<long> b, std::vector<long> d) {
    if (!is_prime(p)) throw precondition_error("p must be prime");
    if (n < 2 || int(b.size()) != n || int(d.size()) != n)
      throw precondition_error("sequence spec shape mismatch");
    for (long v : d)
      if (v < 0) throw precondition_error("sequence slopes must be non-negative");
    long lo = *std::min_element(d.begin(), d.end());
    for (long& v : d) v -= lo;
    return LatticeSeqSpec{p, n, std::move(b), std::move(d)};
  }
};

inline LatticeClass seq_term(const LatticeSeqSpec& s, long k) {
  std::vector<int> support(s.n);
  std::vector<long> exps(s.n);
  for (int i = 0; i < s.n; ++i) {
    support[i] = i;
    exps[i] = s.b[i] + k * s.d[i];
  }
  return LatticeClass::diagonal(s.n, s.p, support, exps);
}

// Limit of the sequence in the compactified building: the columns with zero
// slope stabilize and span the limit class, a class of smaller rank when any
// coordinate escapes.
inline LatticeClass lattice_seq_limit(const LatticeSeqSpec& s) {
  std::vector<int> support;
  std::vector<long> exps;
  for (int i = 0; i < s.n; ++i)
    if (s.d[i] == 0) {
      support.push_back(i);
      exps.push_back(s.b[i]);
    }
  return LatticeClass::diagonal(s.n, s.p, support, exps);
}

// Recomputes the limit through general lattice arithmetic, without reading
// the slopes: intersect the terms one by one, watch the canonical diagonal
// valuations, and keep the rows that stop moving two rounds in a row.
inline LatticeClass lattice_seq_limit_stabilized(const LatticeSeqSpec& s, int cap = 50) {
  auto term_basis = [&](long k) {
    RatMatrix m(s.n, s.n);
    for (int i = 0; i < s.n; ++i) m.at(i, i) = p_power(s.p, s.b[i] + k * s.d[i]);
    return m;
  };
  auto diag_vals = [&](const RatMatrix& m) {
    std::vector<long> v(s.n);
    for (int i = 0; i < s.n; ++i) v[i] = valuation_nonzero(m.at(i, i), s.p);
    return v;
  };
  RatMatrix cur = term_basis(0);
  std::vector<long> prev = diag_vals(cur);
  std::vector<int> stable;
  int confirmations = 0;
  for (long k = 1; k <= cap; ++k) {
    cur = intersect_lattices(cur, term_basis(k), s.p);
    std::vector<long> now = diag_vals(cur);
    std::vector<int> st;
    for (int i = 0; i < s.n; ++i)
      if (now[i] == prev[i]) st.push_back(i);
    if (!st.empty() && st == stable)
      ++confirmations;
    else
      confirmations = 0;
    stable = std::move(st);
    prev = std::move(now);
    if (confirmations >= 2) {
      std::vector<long> exps;
      for (int i : stable) exps.push_back(prev[i]);
      return LatticeClass::diagonal(s.n, s.p, stable, exps);
    }
  }
  throw error("lattice sequence did not stabilize within the round cap");
}

// The coordinate picture of the same sequence: a ray whose limit matches the
// limit class under the diagonal coordinate map.
inline RaySpec coordinate_ray(const LatticeSeqSpec& s) {
  std::vector<Rat> base(s.n), dir(s.n);
  for (int i = 0; i < s.n; ++i) {
    base[i] = Rat(-s.b[i]);
    dir[i] = Rat(s.d[i]);
  }
  return RaySpec::make(ApartmentPoint::interior(s.n, std::move(base)), std::move(dir));
}

// Smallest integer k0 >= 0 such that every integer k >= k0 puts ray_point(k)
// inside the given basic open set; nullopt when no tail is contained. The
// membership system with the ray step as a parameter is eliminated down to
// rows linear in k; each row is monotone, so it contributes an exact
// threshold, and the bound is their maximum.
inline std::optional<long> ray_tail_bound(const RaySpec& r, const NeighborhoodSpec& spec) {
  const int n = r.base.n();
  if (spec.n() != n) throw precondition_error("neighborhood/ray dimension mismatch");

  std::vector<LinRow> rows;
  if (spec.kind() == NeighborhoodSpec::Kind::box) {
    // No witness symbols: the reduced coordinates of ray_point(k) must sit
    // strictly inside the box. Row form: c0 + ck * k (strict).
    for (int m = 0; m < n - 1; ++m) {
      Rat rc = r.base.coord(m) - r.base.coord(n - 1);
      Rat dc = r.direction[m] - r.direction[n - 1];
      const auto& [lo, hi] = spec.box_part().intervals[m];
      rows.push_back(LinRow{{rc - lo, -dc}, true});
      rows.push_back(LinRow{{hi - rc, dc}, true});
    }
  } else {
    detail::CornerSystem cs(n, spec.support());
    const int k_sym = cs.var_count;
    const int nsym = cs.var_count + 1;
    LinSystem sys(nsym);
    for (int m = 0; m < n - 1; ++m) {
      const auto& [lo, hi] = spec.box_part().intervals[m];
      auto r1 = cs.row(nsym);
      r1[0] = -lo;
      r1[1 + m] = 1;
      sys.add(std::move(r1), true);
      auto r2 = cs.row(nsym);
      r2[0] = hi;
      r2[1 + m] = -1;
      sys.add(std::move(r2), true);
    }
    for (int l : cs.cone) {
      auto row = cs.row(nsym);
      row[1 + cs.lam_pos[l]] = 1;
      sys.add(std::move(row), false);
    }
    for (int a = 0; a + 1 < n; ++a) {
      auto row = cs.row(nsym);
      cs.add_y(row, a, Rat(1));
      cs.add_y(row, a + 1, Rat(-1));
      row[0] = -(r.base.coord(a) - r.base.coord(a + 1));
      row[1 + k_sym] = r.direction[a] - r.direction[a + 1];
      sys.add_eq(row);
    }
    std::vector<int> vars(cs.var_count);
    for (int t = 0; t < cs.var_count; ++t) vars[t] = t;
    sys.eliminate_all(vars);
    for (const auto& sr : sys.rows()) rows.push_back(LinRow{{sr.c[0], sr.c[1 + k_sym]}, sr.strict});
  }

  long k0 = 0;
  for (const auto& row : rows) {
    const Rat& c0 = row.c[0];
    const Rat& ck = row.c[1];
    if (ck == 0) {
      if (row.strict ? c0 > 0 : c0 >= 0) continue;
      return std::nullopt;
    }
    if (ck < 0) return std::nullopt;
    Rat bound = -c0 / ck;
    Int t = row.strict ? rat_floor(bound) + 1 : rat_ceil(bound);
    k0 = std::max(k0, t.convert_to<long>());
  }
  return k0;
}

}  // namespace btb
