#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "btb/apartment.hpp"
#include "btb/local_arith.hpp"
#include "btb/matrix.hpp"

namespace btb {

// Homothety class of a finitely generated lattice over the localization of
// the integers at p. The stored basis is the canonical column echelon form
// scaled so the smallest pivot valuation is zero, which makes equality,
// hashing, and ordering structural.
class LatticeClass {
 public:
  static LatticeClass make(int n, long p, const RatMatrix& basis) {
    if (n < 1) throw precondition_error("ambient dimension must be positive");
    if (!is_prime(p)) throw precondition_error("p must be prime");
    if (basis.rows() != n) throw precondition_error("basis row count must match ambient dimension");
    if (basis.cols() < 1 || basis.cols() > n) throw precondition_error("lattice rank out of range");
    LocalHermite h = local_hermite_form_general(basis, p, false);
    long shift = *std::min_element(h.pivot_vals.begin(), h.pivot_vals.end());
    LatticeClass L;
    L.p_ = p;
    L.n_ = n;
    L.basis_ = h.basis.scaled(Rat(1) / p_power(p, shift));
    L.pivot_rows_ = h.pivot_rows;
    L.pivot_vals_ = h.pivot_vals;
    for (long& v : L.pivot_vals_) v -= shift;
    return L;
  }

  // Builds the class from a possibly redundant generating family.
  static LatticeClass from_generators(int n, long p, const RatMatrix& gens) {
    LocalHermite h = local_hermite_form_general(gens, p, true);
    if (h.basis.cols() == 0) throw precondition_error("generators span the zero lattice");
    return make(n, p, h.basis);
  }

  static LatticeClass standard(int n, long p) { return make(n, p, RatMatrix::identity(n)); }

  // Class of the diagonal lattice spanned by p^{exps[k]} e_{support[k]}.
  static LatticeClass diagonal(int n, long p, const std::vector<int>& support, const std::vector<long>& exps) {
    if (support.empty() || support.size() != exps.size())
      throw precondition_error("diagonal support and exponents must match and be nonempty");
    RatMatrix b(n, int(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k) {
      int i = support[k];
      if (i < 0 || i >= n) throw precondition_error("diagonal support index out of range");
      b.at(i, int(k)) = p_power(p, exps[k]);
    }
    return make(n, p, b);
  }

  long p() const { return p_; }
  int n() const { return n_; }
  int rank() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }
  const std::vector<int>& pivot_rows() const { return pivot_rows_; }
  const std::vector<long>& pivot_vals() const { return pivot_vals_; }

  bool operator==(const LatticeClass& o) const {
    return p_ == o.p_ && n_ == o.n_ && basis_ == o.basis_;
  }
  bool operator!=(const LatticeClass& o) const { return !(*this == o); }
  bool operator<(const LatticeClass& o) const {
    if (p_ != o.p_) return p_ < o.p_;
    if (n_ != o.n_) return n_ < o.n_;
    if (basis_.cols() != o.basis_.cols()) return basis_.cols() < o.basis_.cols();
    return basis_ < o.basis_;
  }

 private:
  long p_ = 2;
  int n_ = 1;
  RatMatrix basis_{1, 1};
  std::vector<int> pivot_rows_;
  std::vector<long> pivot_vals_;
};

inline bool same_span(const LatticeClass& L, const LatticeClass& M) {
  if (L.p() != M.p() || L.n() != M.n()) throw precondition_error("classes live in different spaces");
  return same_column_span_q(L.basis(), M.basis());
}

// Relative position of two classes with equal span: the multiset of
// elementary divisor valuations of a basis change, normalized so the
// smallest is zero. Sorted ascending.
inline std::vector<long> rel_pos(const LatticeClass& L, const LatticeClass& M) {
  if (!same_span(L, M)) throw precondition_error("relative position needs equal spans");
  RatMatrix C = solve(L.basis(), M.basis());
  std::vector<long> d = elementary_divisor_valuations(C, L.p());
  long lo = *std::min_element(d.begin(), d.end());
  for (long& v : d) v -= lo;
  std::sort(d.begin(), d.end());
  return d;
}

// Adjacency in the building: distinct classes with equal span admitting
// representatives M, L with pL < M < L. Equivalently all relative position
// entries lie in {0, 1}.
inline bool adjacent(const LatticeClass& L, const LatticeClass& M) {
  if (L.p() != M.p() || L.n() != M.n()) throw precondition_error("classes live in different spaces");
  if (!same_span(L, M)) return false;
  if (L == M) return false;
  for (long v : rel_pos(L, M))
    if (v != 0 && v != 1) return false;
  return true;
}

// A finite set of classes spans a simplex iff its members are pairwise
// adjacent (the complex is a flag complex). Duplicates are collapsed first.
inline bool is_simplex(const std::vector<LatticeClass>& classes) {
  if (classes.empty()) throw precondition_error("simplex test needs a nonempty set");
  std::vector<LatticeClass> s = classes;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!adjacent(s[a], s[b])) return false;
  return true;
}

namespace detail {

// Enumerates bases of the nonzero proper subspaces of F_p^m as reduced
// row echelon matrices: one matrix per subspace, rows are the basis.
inline std::vector<std::vector<std::vector<long>>> proper_subspaces_rref(int m, long p) {
  std::vector<std::vector<std::vector<long>>> out;
  for (int k = 1; k < m; ++k) {
    std::vector<int> piv(k);
    for (int t = 0; t < k; ++t) piv[t] = t;
    while (true) {
      std::vector<int> free_cols;
      for (int c = 0; c < m; ++c) {
        bool is_piv = std::find(piv.begin(), piv.end(), c) != piv.end();
        if (!is_piv) free_cols.push_back(c);
      }
      std::vector<std::pair<int, int>> slots;  // (row, col) entries free to vary
      for (int r = 0; r < k; ++r)
        for (int c : free_cols)
          if (c > piv[r]) slots.emplace_back(r, c);
      std::vector<long> vals(slots.size(), 0);
      while (true) {
        std::vector<std::vector<long>> mat(k, std::vector<long>(m, 0));
        for (int r = 0; r < k; ++r) mat[r][piv[r]] = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) mat[slots[s].first][slots[s].second] = vals[s];
        out.push_back(std::move(mat));
        std::size_t pos = 0;
        while (pos < vals.size() && vals[pos] == p - 1) vals[pos++] = 0;
        if (pos == vals.size()) break;
        ++vals[pos];
      }
      int t = k - 1;
      while (t >= 0 && piv[t] == m - k + t) --t;
      if (t < 0) break;
      ++piv[t];
      for (int u = t + 1; u < k; ++u) piv[u] = piv[u - 1] + 1;
    }
  }
  return out;
}

}  // namespace detail

// All classes adjacent to L: one for each nonzero proper subspace of L/pL,
// obtained by spanning the subspace lifts together with pL. A rank-one class
// has no neighbors because L/pL has no proper nonzero subspaces.
inline std::vector<LatticeClass> neighbors(const LatticeClass& L) {
  const int m = L.rank();
  if (m < 2) throw precondition_error("rank-one classes have no neighbors");
  const long p = L.p();
  std::vector<LatticeClass> out;
  for (const auto& sub : detail::proper_subspaces_rref(m, p)) {
    const int k = int(sub.size());
    RatMatrix gens(L.n(), k + m);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < L.n(); ++r) {
        Rat acc(0);
        for (int t = 0; t < m; ++t) acc += Rat(sub[c][t]) * L.basis().at(r, t);
        gens.at(r, c) = acc;
      }
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < L.n(); ++r) gens.at(r, k + c) = Rat(p) * L.basis().at(r, c);
    out.push_back(LatticeClass::from_generators(L.n(), p, gens));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Finite induced subgraph of the building: the ball of the given radius
// around a center, in the gallery metric of the adjacency graph. Vertices
// are listed breadth-first, each layer sorted by the structural order, so
// the output is reproducible. Edges join all adjacent vertex pairs.
struct BuildingGraph {
  long p = 2;
  int n = 1;
  int center = 0;
  int radius = 0;
  std::vector<LatticeClass> vertices;
  std::vector<std::pair<int, int>> edges;
};

inline BuildingGraph ball(const LatticeClass& center, int radius) {
  if (radius < 0) throw precondition_error("radius must be non-negative");
  BuildingGraph g;
  g.p = center.p();
  g.n = center.n();
  g.radius = radius;
  std::vector<LatticeClass> verts{center};
  std::set<LatticeClass> seen{center};
  std::vector<LatticeClass> frontier{center};
  for (int step = 0; step < radius && center.rank() >= 2; ++step) {
    std::set<LatticeClass> layer;
    for (const LatticeClass& v : frontier)
      for (const LatticeClass& w : neighbors(v))
        if (!seen.count(w)) layer.insert(w);
    frontier.assign(layer.begin(), layer.end());
    for (const LatticeClass& w : frontier) {
      seen.insert(w);
      verts.push_back(w);
    }
    if (frontier.empty()) break;
  }
  g.vertices = std::move(verts);
  g.center = 0;
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < g.vertices.size(); ++b)
      if (adjacent(g.vertices[a], g.vertices[b])) g.edges.emplace_back(int(a), int(b));
  return g;
}

// Diagonal classes correspond to points of the model apartment: the class of
// the lattice spanned by p^{k_i} e_i over i in the support maps to the point
// with those coordinates negated. Throws if the class is not diagonal.
inline ApartmentPoint apartment_coordinates(const LatticeClass& L) {
  const RatMatrix& b = L.basis();
  std::vector<int> support;
  std::vector<Rat> coords;
  for (int c = 0; c < b.cols(); ++c) {
    int row = -1;
    for (int r = 0; r < b.rows(); ++r)
      if (b.at(r, c) != 0) {
        if (row >= 0) throw precondition_error("class is not diagonal in the standard frame");
        row = r;
      }
    if (row < 0) throw precondition_error("class is not diagonal in the standard frame");
    Rat v = b.at(row, c);
    ExtVal e = valuation(v, L.p());
    if (v != Rat(p_power(L.p(), rat_num(e.finite()).convert_to<long>())) || rat_den(e.finite()) != 1)
      throw precondition_error("class is not diagonal in the standard frame");
    support.push_back(row);
    coords.push_back(-e.finite());
  }
  return ApartmentPoint::make(L.n(), std::move(support), std::move(coords));
}

// Inverse direction: an integer-coordinate point names the diagonal class
// with exponents the negated coordinates.
inline LatticeClass diagonal_class(const ApartmentPoint& x, long p) {
  std::vector<int> support = x.support();
  std::vector<long> exps;
  for (const Rat& c : x.coords()) {
    if (rat_den(c) != 1) throw precondition_error("point must have integer coordinates");
    exps.push_back(-rat_num(c).convert_to<long>());
  }
  return LatticeClass::diagonal(x.n(), p, support, exps);
}

// A common frame for a class x of any rank and a full-rank class y: a basis
// f_1..f_n of the ambient space together with exponent vectors, such that a
// subset of the frame scaled by the subset exponents spans a representative
// of x while the full frame with its exponents spans a representative of y.
struct CommonFrame {
  RatMatrix frame{1, 1};
  std::vector<int> subset;          // frame columns carrying x, ascending
  std::vector<long> sub_exponents;  // exponents on those columns for x
  std::vector<long> full_exponents; // exponents on all columns for y
};

inline CommonFrame common_frame(const LatticeClass& x, const LatticeClass& y) {
  if (x.p() != y.p() || x.n() != y.n()) throw precondition_error("classes live in different spaces");
  if (y.rank() != y.n()) throw precondition_error("second class must have full rank");
  const long p = x.p();
  const int m = x.rank();
  RatMatrix S = saturate_intersection(y.basis(), x.basis(), p);
  RatMatrix C = solve(S, x.basis());
  SmithLocal sm = smith_local(C, p);
  RatMatrix FS = S * sm.U;
  RatMatrix rest = complete_to_basis(y.basis(), FS, p);
  CommonFrame f;
  f.frame = rest.cols() > 0 ? RatMatrix::hstack(FS, rest) : FS;
  for (int j = 0; j < m; ++j) f.subset.push_back(j);
  f.sub_exponents = sm.d;
  f.full_exponents.assign(x.n(), 0);
  return f;
}

// Checks the defining property of a common frame against the two classes.
inline bool frame_matches(const CommonFrame& f, const LatticeClass& x, const LatticeClass& y) {
  const long p = x.p();
  if (int(f.subset.size()) != x.rank() || f.frame.cols() != y.n()) return false;
  RatMatrix sub(f.frame.rows(), int(f.subset.size()));
  for (std::size_t k = 0; k < f.subset.size(); ++k)
    for (int r = 0; r < f.frame.rows(); ++r)
      sub.at(r, int(k)) = f.frame.at(r, f.subset[k]) * p_power(p, f.sub_exponents[k]);
  RatMatrix full(f.frame.rows(), f.frame.cols());
  for (int c = 0; c < f.frame.cols(); ++c)
    for (int r = 0; r < f.frame.rows(); ++r)
      full.at(r, c) = f.frame.at(r, c) * p_power(p, f.full_exponents[c]);
  return LatticeClass::make(x.n(), p, sub) == x && LatticeClass::make(y.n(), p, full) == y;
}

// Gaussian binomial coefficient: the number of k-dimensional subspaces of
// F_p^m.
inline Int gaussian_binomial(int m, int k, long p) {
  if (k < 0 || k > m) return Int(0);
  auto pw = [&](int e) {
    Int r(1);
    for (int t = 0; t < e; ++t) r *= p;
    return r;
  };
  Int num(1), den(1);
  for (int t = 0; t < k; ++t) {
    num *= pw(m - t) - 1;
    den *= pw(t + 1) - 1;
  }
  return num / den;
}

}  // namespace btb
