#pragma once

#include <optional>
#include <vector>

#include "btb/matrix.hpp"
#include "btb/rational.hpp"

namespace btb {

inline Rat p_power(long p, long e) {
  Rat r = 1;
  Rat base = p;
  long k = e < 0 ? -e : e;
  for (long i = 0; i < k; ++i) r *= base;
  if (e < 0) r = 1 / r;
  return r;
}

// Canonical representative of the coset x + p^e Z_(p).
// For v = vval(x) >= e the coset contains 0. Otherwise every member has
// valuation exactly v and the coset contains exactly one element of the form
// r0 * p^v with r0 an integer in [0, p^(e-v)) prime to p; that element is
// returned. When v >= 0 this is the usual integer representative in [0, p^e).
inline Rat local_residue(const Rat& x, long p, long e) {
  if (x == 0) return Rat(0);
  long v = valuation_nonzero(x, p);
  if (v >= e) return Rat(0);
  Rat unit = x / p_power(p, v);  // p-adic unit a/b
  Int a = rat_num(unit), b = rat_den(unit);
  Int mod = rat_num(p_power(p, e - v));
  // r0 = a * b^{-1} mod p^{e-v}; b is prime to p so the inverse exists.
  Int b_inv = 0, t = 1, r = mod, nr = ((b % mod) + mod) % mod;
  while (nr != 0) {
    Int q = r / nr;
    Int tmp = b_inv - q * t;
    b_inv = t;
    t = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  Int r0 = ((a % mod) * ((b_inv % mod) + mod)) % mod;
  r0 = ((r0 % mod) + mod) % mod;
  return Rat(r0) * p_power(p, v);
}

struct LocalHermite {
  RatMatrix basis;              // columns ordered by pivot row
  std::vector<int> pivot_rows;  // strictly increasing
  std::vector<long> pivot_vals; // pivot entry of column j is p^pivot_vals[j]
};

// Canonical column form of the Z_(p)-span of the columns of A.
//
// The result B satisfies: B = A*C for some C invertible over Z_(p); each
// column has its topmost nonzero entry ("pivot") equal to an exact power of
// p, pivot rows strictly increase left to right, and every entry of an
// earlier column in a pivot row is the canonical residue mod p^e of its
// coset. This determines B uniquely from the span: any two matrices in this
// form with the same span agree column by column (expand one basis in the
// other; the echelon shape forces the change of basis to be unipotent
// upper-triangular, and matching canonical residues forces it to be the
// identity). hnf(A*C) = hnf(A) and idempotence follow.
inline LocalHermite local_hermite_form_general(const RatMatrix& A, long p, bool allow_dependent) {
  if (!is_prime(p)) throw precondition_error("p must be prime");
  int n = A.rows(), m = A.cols();
  std::vector<std::vector<Rat>> active(m, std::vector<Rat>(n));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) active[j][i] = A.at(i, j);

  std::vector<std::vector<Rat>> pivots;
  std::vector<int> pivot_rows;
  std::vector<long> pivot_vals;

  for (int r = 0; r < n && !active.empty(); ++r) {
    int best = -1;
    long best_v = 0;
    for (int j = 0; j < int(active.size()); ++j) {
      if (active[j][r] == 0) continue;
      long v = valuation_nonzero(active[j][r], p);
      if (best < 0 || v < best_v) {
        best = j;
        best_v = v;
      }
    }
    if (best < 0) continue;
    std::vector<Rat> piv = std::move(active[best]);
    active.erase(active.begin() + best);
    // scale by the inverse unit so the pivot entry is exactly p^e
    Rat scale = p_power(p, best_v) / piv[r];
    for (auto& x : piv) x *= scale;
    for (auto& col : active) {
      if (col[r] == 0) continue;
      Rat f = col[r] / p_power(p, best_v);  // in Z_(p) by minimality of best_v
      for (int i = r; i < n; ++i) col[i] -= f * piv[i];
    }
    pivots.push_back(std::move(piv));
    pivot_rows.push_back(r);
    pivot_vals.push_back(best_v);
  }

  for (const auto& col : active) {
    bool zero = std::all_of(col.begin(), col.end(), [](const Rat& x) { return x == 0; });
    if (!zero) throw error("internal: nonzero column left after elimination");
  }
  if (!allow_dependent && int(pivots.size()) != m)
    throw precondition_error("columns are not linearly independent");

  // Back-reduce pivot-row entries of earlier columns to canonical residues.
  int k = int(pivots.size());
  for (int t = 1; t < k; ++t) {
    int r = pivot_rows[t];
    for (int s = 0; s < t; ++s) {
      Rat x = pivots[s][r];
      Rat rep = local_residue(x, p, pivot_vals[t]);
      if (x == rep) continue;
      Rat f = (x - rep) / p_power(p, pivot_vals[t]);
      for (int i = r; i < int(pivots[s].size()); ++i) pivots[s][i] -= f * pivots[t][i];
    }
  }

  LocalHermite h;
  h.basis = RatMatrix(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) h.basis.at(i, j) = pivots[j][i];
  h.pivot_rows = std::move(pivot_rows);
  h.pivot_vals = std::move(pivot_vals);
  return h;
}

inline RatMatrix local_hermite_form(const RatMatrix& A, long p) {
  return local_hermite_form_general(A, p, false).basis;
}

struct SmithLocal {
  RatMatrix U;          // rows x rows, invertible over Z_(p)
  RatMatrix V;          // cols x cols, invertible over Z_(p)
  std::vector<long> d;  // divisor valuations, ascending; size = rank
  int rank = 0;
};

// Diagonalization A = U * D * V over Z_(p), with D carrying p^d[t] at (t, t)
// for t < rank and zero elsewhere. Because divisibility in Z_(p) is total,
// one global-minimum pivot per step suffices and the d are ascending.
inline SmithLocal smith_local(const RatMatrix& A, long p) {
  if (!is_prime(p)) throw precondition_error("p must be prime");
  int n = A.rows(), m = A.cols();
  RatMatrix M = A;
  SmithLocal s;
  s.U = RatMatrix::identity(n);
  s.V = RatMatrix::identity(m);
  // invariant: A = U * M * V

  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m; ++j) std::swap(M.at(a, j), M.at(b, j));
    for (int i = 0; i < n; ++i) std::swap(s.U.at(i, a), s.U.at(i, b));
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int i = 0; i < n; ++i) std::swap(M.at(i, a), M.at(i, b));
    for (int j = 0; j < m; ++j) std::swap(s.V.at(a, j), s.V.at(b, j));
  };

  int t = 0;
  for (; t < std::min(n, m); ++t) {
    int bi = -1, bj = -1;
    long bv = 0;
    for (int i = t; i < n; ++i)
      for (int j = t; j < m; ++j) {
        if (M.at(i, j) == 0) continue;
        long v = valuation_nonzero(M.at(i, j), p);
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    // scale row t by the inverse unit: M <- E M with E = diag(.., 1/u, ..),
    // so U absorbs diag(.., u, ..) on column t.
    Rat u_unit = M.at(t, t) / p_power(p, bv);
    for (int j = t; j < m; ++j) M.at(t, j) /= u_unit;
    for (int i = 0; i < n; ++i) s.U.at(i, t) *= u_unit;
    Rat piv = M.at(t, t);
    for (int i = t + 1; i < n; ++i) {
      if (M.at(i, t) == 0) continue;
      Rat f = M.at(i, t) / piv;  // in Z_(p): piv has minimal valuation
      for (int j = t; j < m; ++j) M.at(i, j) -= f * M.at(t, j);
      for (int r = 0; r < n; ++r) s.U.at(r, t) += f * s.U.at(r, i);
    }
    for (int j = t + 1; j < m; ++j) {
      if (M.at(t, j) == 0) continue;
      Rat f = M.at(t, j) / piv;
      for (int i = t; i < n; ++i) M.at(i, j) -= f * M.at(i, t);
      for (int c = 0; c < m; ++c) s.V.at(t, c) += f * s.V.at(j, c);
    }
    s.d.push_back(bv);
  }
  s.rank = t;
  return s;
}

// Valuations d_1 <= ... <= d_m of the diagonal in the Smith form of an
// invertible square matrix over Z_(p).
inline std::vector<long> elementary_divisor_valuations(const RatMatrix& C, long p) {
  if (C.rows() != C.cols()) throw precondition_error("elementary divisors: matrix not square");
  if (det(C) == 0) throw precondition_error("elementary divisors: matrix not invertible");
  return smith_local(C, p).d;
}

// Basis of L ∩ W where L is the Z_(p)-span of the columns of `lattice` and W
// is the Q-span of the columns of `subspace` (required: W ⊆ QL). The result
// is a saturated (direct summand) sublattice of L, returned in canonical form.
inline RatMatrix saturate_intersection(const RatMatrix& lattice, const RatMatrix& subspace, long p) {
  int k = subspace.cols();
  if (rank(subspace) != k) throw precondition_error("subspace basis is rank deficient");
  RatMatrix X = solve(lattice, subspace);  // throws if W ⊄ span(L)
  SmithLocal s = smith_local(X, p);
  if (s.rank != k) throw error("internal: saturation rank mismatch");
  std::vector<int> first(k);
  for (int j = 0; j < k; ++j) first[j] = j;
  return local_hermite_form(lattice * s.U.columns(first), p);
}

// Extend a saturated sub-basis S of the lattice L to a full Z_(p)-basis of L;
// returns the added columns. Preconditions: columns of S lie in L and span a
// direct summand.
inline RatMatrix complete_to_basis(const RatMatrix& lattice, const RatMatrix& sub, long p) {
  int m = lattice.cols(), k = sub.cols();
  RatMatrix X = solve(lattice, sub);
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (!is_local_integer(X.at(i, j), p))
        throw precondition_error("sub-basis is not contained in the lattice");
  SmithLocal s = smith_local(X, p);
  if (s.rank != k) throw precondition_error("sub-basis is rank deficient");
  for (long dv : s.d)
    if (dv != 0) throw precondition_error("sub-basis does not span a saturated sublattice");
  std::vector<int> rest(m - k);
  for (int j = k; j < m; ++j) rest[j - k] = j;
  return lattice * s.U.columns(rest);
}

// Intersection of two full-column-rank lattices with equal Q-span,
// via A ∩ B = A·(Z_(p)^m ∩ C·Z_(p)^m) with C = A^{-1}B = U D V:
// Z_(p)^m ∩ U D Z_(p)^m = U · ⊕ p^{max(d_t,0)} Z_(p).
inline RatMatrix intersect_lattices(const RatMatrix& A, const RatMatrix& B, long p) {
  if (!same_column_span_q(A, B)) throw precondition_error("lattice intersection requires equal spans");
  int m = A.cols();
  RatMatrix C = solve(A, B);
  SmithLocal s = smith_local(C, p);
  if (s.rank != m) throw error("internal: intersection rank mismatch");
  RatMatrix W = s.U;
  for (int t = 0; t < m; ++t) {
    if (s.d[t] <= 0) continue;
    Rat f = p_power(p, s.d[t]);
    for (int i = 0; i < m; ++i) W.at(i, t) *= f;
  }
  return local_hermite_form(A * W, p);
}

}  // namespace btb
