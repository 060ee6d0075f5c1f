#pragma once

#include <algorithm>
#include <vector>

#include "btb/apartment.hpp"
#include "btb/elements.hpp"
#include "btb/lattice.hpp"
#include "btb/norm_point.hpp"

namespace btb {

// Projective linear action on lattice classes: push the basis forward.
inline LatticeClass act(const ProjElement& g, const LatticeClass& L) {
  if (g.n() != L.n()) throw precondition_error("element/class dimension mismatch");
  return LatticeClass::make(L.n(), L.p(), g.matrix() * L.basis());
}

// Action on norm points: push the adapted basis forward, keep the weights.
// Rescaling the representative matrix only shifts the norm by a constant,
// which the class quotients out.
inline NormPoint act(const ProjElement& g, const NormPoint& x) {
  if (g.n() != x.n()) throw precondition_error("element/point dimension mismatch");
  return NormPoint::make(x.p(), x.n(), g.matrix() * x.basis(), x.weights());
}

// Membership in the filtration subgroup attached to a point: the unipotent
// element 1 + omega*E_{ij} fixes the point exactly when v_p(omega) clears
// the root-filtration level.
inline bool in_filtration_group(const RootGroupElement& u, const ApartmentPoint& x, long p) {
  ExtVal level = filtration_level(Root::make(u.i, u.j, x.n()), x);
  ExtVal v = psi(u, p);
  return !(v < level);
}

inline bool stabilizes(const ProjElement& g, const NormPoint& x) { return np_equal(act(g, x), x); }

inline bool stabilizes(const ProjElement& g, const LatticeClass& L) { return act(g, L) == L; }

inline bool stabilizes_all(const ProjElement& g, const std::vector<NormPoint>& pts) {
  for (const NormPoint& x : pts)
    if (!stabilizes(g, x)) return false;
  return true;
}

// A finite family of points has a support maximum when one support contains
// all the others; then the pointwise stabilizer of the family acts through
// that largest stratum.
inline bool support_has_maximum(const std::vector<ApartmentPoint>& pts) {
  if (pts.empty()) throw precondition_error("support test needs a nonempty family");
  std::vector<int> u;
  for (const ApartmentPoint& x : pts) {
    std::vector<int> merged;
    std::set_union(u.begin(), u.end(), x.support().begin(), x.support().end(), std::back_inserter(merged));
    u = std::move(merged);
  }
  for (const ApartmentPoint& x : pts)
    if (x.support() == u) return true;
  return false;
}

// Conjugating a unipotent by a monomial element permutes the root and
// rescales the parameter by the valuation gap: n u n^{-1} has root
// (perm i, perm j) and parameter omega * p^(vals_i - vals_j).
inline RootGroupElement conjugate_root_group(const MonomialElement& m, const RootGroupElement& u, long p) {
  if (u.i >= m.n() || u.j >= m.n()) throw precondition_error("root indices out of range");
  Rat w = u.omega * p_power(p, m.vals[u.i] - m.vals[u.j]);
  return RootGroupElement::make(m.perm[u.i], m.perm[u.j], w);
}

// Whether the element maps the coordinate subspace span(e_i : i in I) into
// itself. I is 0-based and ascending.
inline bool preserves_subspace(const ProjElement& g, const std::vector<int>& I) {
  for (int j : I) {
    if (j < 0 || j >= g.n()) throw precondition_error("subspace index out of range");
    for (int r = 0; r < g.n(); ++r)
      if (g.matrix().at(r, j) != 0 && !std::binary_search(I.begin(), I.end(), r)) return false;
  }
  return true;
}

// Restriction of a subspace-preserving element to the coordinate subspace,
// as a projective element of the smaller group.
inline ProjElement restrict_element(const ProjElement& g, const std::vector<int>& I) {
  if (I.empty()) throw precondition_error("restriction needs a nonempty index set");
  if (!preserves_subspace(g, I)) throw precondition_error("element does not preserve the subspace");
  RatMatrix block(int(I.size()), int(I.size()));
  for (std::size_t a = 0; a < I.size(); ++a)
    for (std::size_t b = 0; b < I.size(); ++b) block.at(int(a), int(b)) = g.matrix().at(I[a], I[b]);
  return ProjElement::make(block);
}

}  // namespace btb
