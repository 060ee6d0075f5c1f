#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "btb/apartment.hpp"
#include "btb/lattice.hpp"

namespace btb {

// Point of the compactified building in the norm model: a p-adic norm on the
// column span W of `basis`, taken up to an additive constant. The norm of
// sum c_j f_j is min_j(v_p(c_j) - w_j), so its unit ball is the lattice
// spanned by p^{w_j} f_j; smaller rank means a deeper boundary stratum.
// Weights are normalized to minimum zero to fix the constant.
class NormPoint {
 public:
  static NormPoint make(long p, int n, RatMatrix basis, std::vector<Rat> weights) {
    if (!is_prime(p)) throw precondition_error("p must be prime");
    if (basis.rows() != n || n < 1) throw precondition_error("norm basis shape mismatch");
    if (basis.cols() < 1 || basis.cols() > n) throw precondition_error("norm rank out of range");
    if (int(weights.size()) != basis.cols()) throw precondition_error("weight count must match rank");
    if (btb::rank(basis) != basis.cols()) throw precondition_error("norm basis is rank deficient");
    Rat lo = *std::min_element(weights.begin(), weights.end());
    for (Rat& w : weights) w -= lo;
    NormPoint x;
    x.p_ = p;
    x.n_ = n;
    x.basis_ = std::move(basis);
    x.weights_ = std::move(weights);
    return x;
  }

  long p() const { return p_; }
  int n() const { return n_; }
  int rank() const { return basis_.cols(); }
  const RatMatrix& basis() const { return basis_; }
  const std::vector<Rat>& weights() const { return weights_; }

 private:
  long p_ = 2;
  int n_ = 1;
  RatMatrix basis_{1, 1};
  std::vector<Rat> weights_;
};

// Value of the norm on a vector of its subspace (+inf on the zero vector).
// Vectors outside the subspace are a precondition violation.
inline ExtVal np_eval(const NormPoint& x, const RatMatrix& u) {
  if (u.rows() != x.n() || u.cols() != 1) throw precondition_error("norm argument must be a single column");
  RatMatrix c(1, 1);
  try {
    c = solve(x.basis(), u);
  } catch (const precondition_error&) {
    throw precondition_error("vector lies outside the norm's subspace");
  }
  ExtVal best = ExtVal::pos_inf();
  for (int j = 0; j < x.rank(); ++j) {
    ExtVal v = valuation(c.at(j, 0), x.p());
    if (v.is_finite()) v = ExtVal(v.finite() - x.weights()[j]);
    best = ext_min(best, v);
  }
  return best;
}

// Equality of norm classes: equal subspaces, and the two norms differ by a
// constant. Adapted bases make one inequality direction per basis vector
// sufficient, so checking both bases against the fixed constant decides
// pointwise equality.
inline bool np_equal(const NormPoint& x, const NormPoint& y) {
  if (x.p() != y.p() || x.n() != y.n()) throw precondition_error("norm points live in different spaces");
  if (x.rank() != y.rank()) return false;
  if (!same_column_span_q(x.basis(), y.basis())) return false;
  ExtVal c0 = np_eval(x, y.basis().col(0));
  if (!c0.is_finite()) throw error("internal: norm of a basis vector must be finite");
  Rat c = c0.finite() + y.weights()[0];
  for (int i = 0; i < y.rank(); ++i) {
    ExtVal v = np_eval(x, y.basis().col(i));
    if (!(v.is_finite() && v.finite() == c - y.weights()[i])) return false;
  }
  for (int j = 0; j < x.rank(); ++j) {
    ExtVal v = np_eval(y, x.basis().col(j));
    if (!(v.is_finite() && v.finite() == -x.weights()[j] - c)) return false;
  }
  return true;
}

// Embedding of the compactified apartment: the point with support I and
// coordinates x_i becomes the diagonal norm on span(e_i : i in I) with
// weights -x_i.
inline NormPoint norm_from_apartment(const ApartmentPoint& x, long p) {
  const int m = int(x.support().size());
  RatMatrix b(x.n(), m);
  std::vector<Rat> w(m);
  for (int k = 0; k < m; ++k) {
    b.at(x.support()[k], k) = 1;
    w[k] = -x.coords()[k];
  }
  return NormPoint::make(p, x.n(), std::move(b), std::move(w));
}

// Inverse of the embedding for norms aligned with the standard frame: every
// basis column must be a scalar multiple of a standard vector. The scalar's
// valuation folds into the weight.
inline ApartmentPoint norm_to_apartment(const NormPoint& x) {
  std::vector<int> support;
  std::vector<Rat> coords;
  for (int j = 0; j < x.rank(); ++j) {
    int row = -1;
    for (int r = 0; r < x.n(); ++r)
      if (x.basis().at(r, j) != 0) {
        if (row >= 0) throw precondition_error("norm point is not aligned with the standard frame");
        row = r;
      }
    long shift = valuation_nonzero(x.basis().at(row, j), x.p());
    support.push_back(row);
    coords.push_back(-(x.weights()[j] + shift));
  }
  return ApartmentPoint::make(x.n(), std::move(support), std::move(coords));
}

// A lattice class embeds as the norm whose unit ball is the lattice: the
// canonical basis columns are rescaled to unit pivots and the pivot
// valuations become the weights.
inline NormPoint norm_from_lattice(const LatticeClass& L) {
  RatMatrix b = L.basis();
  std::vector<Rat> w(L.rank());
  for (int j = 0; j < L.rank(); ++j) {
    Rat f = p_power(L.p(), -L.pivot_vals()[j]);
    for (int r = 0; r < L.n(); ++r) b.at(r, j) *= f;
    w[j] = Rat(L.pivot_vals()[j]);
  }
  return NormPoint::make(L.p(), L.n(), std::move(b), std::move(w));
}

// Inverse embedding for integral norm points: the class of the unit ball.
inline LatticeClass norm_to_lattice(const NormPoint& x) {
  RatMatrix b = x.basis();
  for (int j = 0; j < x.rank(); ++j) {
    const Rat& w = x.weights()[j];
    if (rat_den(w) != 1) throw precondition_error("weights must be integers to name a lattice class");
    Rat f = p_power(x.p(), rat_num(w).convert_to<long>());
    for (int r = 0; r < x.n(); ++r) b.at(r, j) *= f;
  }
  return LatticeClass::make(x.n(), x.p(), b);
}

// Canonical basis of the subspace the norm lives on.
inline RatMatrix component_span(const NormPoint& x) { return local_hermite_form(x.basis(), x.p()); }

}  // namespace btb
