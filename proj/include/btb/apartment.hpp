#pragma once

#include <algorithm>
#include <vector>

#include "btb/elements.hpp"
#include "btb/rational.hpp"

namespace btb {

// A point of the compactified apartment. The stratum is named by the
// boundary support I (nonempty subset of ambient coordinates); the point has
// one rational coordinate per support index, taken modulo a common additive
// constant and normalized so the minimum coordinate is 0. Full support means
// an interior point; |I| = 1 strata are single points (coordinate 0).
class ApartmentPoint {
 public:
  static ApartmentPoint make(int n, std::vector<int> support, std::vector<Rat> coords) {
    if (n < 2) throw precondition_error("ambient dimension must be at least 2");
    if (support.empty()) throw precondition_error("support must be nonempty");
    if (support.size() != coords.size()) throw precondition_error("support/coordinate size mismatch");
    std::vector<std::size_t> order(support.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    ApartmentPoint x;
    x.n_ = n;
    for (std::size_t k : order) {
      int i = support[k];
      if (i < 0 || i >= n) throw precondition_error("support index out of range");
      if (!x.support_.empty() && x.support_.back() == i) throw precondition_error("duplicate support index");
      x.support_.push_back(i);
      x.coords_.push_back(coords[k]);
    }
    Rat mn = x.coords_[0];
    for (const Rat& c : x.coords_) mn = std::min(mn, c);
    for (Rat& c : x.coords_) c -= mn;
    return x;
  }

  static ApartmentPoint interior(int n, std::vector<Rat> coords) {
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i;
    return make(n, std::move(full), std::move(coords));
  }

  static ApartmentPoint origin(int n) { return interior(n, std::vector<Rat>(n, Rat(0))); }

  int n() const { return n_; }
  const std::vector<int>& support() const { return support_; }
  const std::vector<Rat>& coords() const { return coords_; }
  bool is_interior() const { return int(support_.size()) == n_; }

  bool has(int i) const { return std::binary_search(support_.begin(), support_.end(), i); }

  const Rat& coord(int i) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), i);
    if (it == support_.end() || *it != i) throw precondition_error("coordinate index outside support");
    return coords_[it - support_.begin()];
  }

  friend bool operator==(const ApartmentPoint& a, const ApartmentPoint& b) {
    return a.n_ == b.n_ && a.support_ == b.support_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const ApartmentPoint& a, const ApartmentPoint& b) { return !(a == b); }

 private:
  int n_ = 0;
  std::vector<int> support_;
  std::vector<Rat> coords_;
};

// Stratum projection: restrict coordinates to I ⊆ support and renormalize.
inline ApartmentPoint project(const ApartmentPoint& x, const std::vector<int>& I) {
  std::vector<int> sup;
  std::vector<Rat> co;
  for (int i : I) {
    if (!x.has(i)) throw precondition_error("projection target is not contained in the support");
    sup.push_back(i);
    co.push_back(x.coord(i));
  }
  return ApartmentPoint::make(x.n(), std::move(sup), std::move(co));
}

struct Root {
  int i, j;  // 0-based, distinct
  static Root make(int i, int j, int n) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw precondition_error("root indices out of range");
    return Root{i, j};
  }
};

// Pairing a_{ij}(x) = x_i - x_j; defined only when both indices are in the
// support. Outside the support use filtration_level instead.
inline Rat root_eval(const Root& a, const ApartmentPoint& x) {
  return x.coord(a.i) - x.coord(a.j);
}

// Level at which the root subgroup filtration of a_{ij} cuts off at x:
//   j outside the support        -> -inf (no constraint survives),
//   j inside, i outside          -> +inf (only the identity remains),
//   both inside                  -> -(x_i - x_j).
inline ExtVal filtration_level(const Root& a, const ApartmentPoint& x) {
  if (a.i >= x.n() || a.j >= x.n()) throw precondition_error("root indices out of range");
  bool hi = x.has(a.i), hj = x.has(a.j);
  if (!hj) return ExtVal::neg_inf();
  if (!hi) return ExtVal::pos_inf();
  return ExtVal(Rat(-(x.coord(a.i) - x.coord(a.j))));
}

// Supremum of the pointwise levels over a finite nonempty set.
inline ExtVal filtration_level_set(const Root& a, const std::vector<ApartmentPoint>& omega) {
  if (omega.empty()) throw precondition_error("level over an empty set");
  ExtVal m = filtration_level(a, omega[0]);
  for (std::size_t k = 1; k < omega.size(); ++k) m = ext_max(m, filtration_level(a, omega[k]));
  return m;
}

// x lies in the closed corner E_i around the rank-one stratum at i iff i is
// in the support and x_i is a maximal coordinate. Points degenerate toward
// that stratum as every other coordinate falls away to -inf, so the corner
// holds the points whose i-th coordinate dominates.
inline bool in_corner(int i, const ApartmentPoint& x) {
  if (i < 0 || i >= x.n()) throw precondition_error("corner index out of range");
  if (!x.has(i)) return false;
  const Rat& xi = x.coord(i);
  for (const Rat& c : x.coords())
    if (c > xi) return false;
  return true;
}

// Corner chart at i: for each ambient j != i (ascending) the value x_i - x_j,
// with +inf at indices outside the support. A bijection E_i -> [0, inf]^(n-1).
inline std::vector<ExtVal> corner_chart(int i, const ApartmentPoint& x) {
  if (!in_corner(i, x)) throw precondition_error("point is outside the requested corner");
  std::vector<ExtVal> vals;
  for (int j = 0; j < x.n(); ++j) {
    if (j == i) continue;
    if (x.has(j))
      vals.push_back(ExtVal(Rat(x.coord(i) - x.coord(j))));
    else
      vals.push_back(ExtVal::pos_inf());
  }
  return vals;
}

inline ApartmentPoint corner_chart_inv(int i, int n, const std::vector<ExtVal>& vals) {
  if (int(vals.size()) != n - 1) throw precondition_error("corner chart arity mismatch");
  if (i < 0 || i >= n) throw precondition_error("corner index out of range");
  std::vector<int> sup{i};
  std::vector<Rat> co{Rat(0)};
  int k = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const ExtVal& v = vals[k++];
    if (v.is_neg_inf() || (v.is_finite() && v.finite() < 0))
      throw precondition_error("corner chart values must be non-negative or +inf");
    if (v.is_finite()) {
      sup.push_back(j);
      co.push_back(-v.finite());
    }
  }
  return ApartmentPoint::make(n, std::move(sup), std::move(co));
}

// Deformation toward the interior origin along the corner structure:
// t = 0 is the identity, t = 1 collapses everything to the origin, and for
// 0 < t < 1 every point (boundary included) lands in the interior. Computed
// in the chart of the least corner containing x; the formula
//   finite xi -> (1-t)xi / (1+t*xi),   inf -> (1-t)/t
// is compatible across corners because charts at two dominating indices
// list the same values (the offset x_i - x_i' is 0) up to position.
inline ApartmentPoint contract(const ApartmentPoint& x, const Rat& t) {
  if (t < 0 || t > 1) throw precondition_error("contraction parameter outside [0,1]");
  if (t == 0) return x;
  int corner = -1;
  for (int i = 0; i < x.n() && corner < 0; ++i)
    if (in_corner(i, x)) corner = i;
  std::vector<ExtVal> vals = corner_chart(corner, x);
  std::vector<ExtVal> out;
  for (const ExtVal& v : vals) {
    if (v.is_finite()) {
      const Rat& xi = v.finite();
      out.push_back(ExtVal(Rat((1 - t) * xi / (1 + t * xi))));
    } else {
      out.push_back(ExtVal(Rat((1 - t) / t)));
    }
  }
  return corner_chart_inv(corner, x.n(), out);
}

// Monomial action on the compactified apartment: the support maps through
// the permutation and the coordinate at perm[i] becomes x_i - vals[i].
inline ApartmentPoint act_monomial(const MonomialElement& m, const ApartmentPoint& x) {
  if (m.n() != x.n()) throw precondition_error("monomial element dimension mismatch");
  std::vector<int> sup;
  std::vector<Rat> co;
  for (std::size_t k = 0; k < x.support().size(); ++k) {
    int i = x.support()[k];
    sup.push_back(m.perm[i]);
    co.push_back(x.coords()[k] - m.vals[i]);
  }
  return ApartmentPoint::make(x.n(), std::move(sup), std::move(co));
}

}  // namespace btb
