#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "btb/apartment.hpp"
#include "btb/fourier_motzkin.hpp"

namespace btb {

// Open axis-aligned box in the interior apartment, written in the reduced
// coordinates (x_0 - x_{n-1}, ..., x_{n-2} - x_{n-1}); intervals are finite,
// open, and nonempty.
struct BoxSpec {
  std::vector<std::pair<Rat, Rat>> intervals;

  static BoxSpec make(std::vector<std::pair<Rat, Rat>> iv) {
    if (iv.empty()) throw precondition_error("box needs at least one interval");
    for (const auto& [lo, hi] : iv)
      if (!(lo < hi)) throw precondition_error("box interval is empty");
    return BoxSpec{std::move(iv)};
  }

  static BoxSpec around(const std::vector<Rat>& reduced, const Rat& radius) {
    if (radius <= 0) throw precondition_error("box radius must be positive");
    std::vector<std::pair<Rat, Rat>> iv;
    for (const Rat& c : reduced) iv.emplace_back(c - radius, c + radius);
    return make(std::move(iv));
  }

  int n() const { return int(intervals.size()) + 1; }
};

// Basic open set of the compactified apartment: either an open box of
// interior points, or a corner set around the stratum with support I: the
// box swept down the cone of escape directions off I, together with the
// stratum projections of that sweep.
class NeighborhoodSpec {
 public:
  enum class Kind { box, corner };

  static NeighborhoodSpec box(BoxSpec b) {
    NeighborhoodSpec s;
    s.kind_ = Kind::box;
    s.box_ = std::move(b);
    return s;
  }

  static NeighborhoodSpec corner(std::vector<int> I, BoxSpec b) {
    NeighborhoodSpec s;
    std::sort(I.begin(), I.end());
    I.erase(std::unique(I.begin(), I.end()), I.end());
    if (I.empty()) throw precondition_error("corner support must be nonempty");
    if (I.front() < 0 || I.back() >= b.n()) throw precondition_error("corner support index out of range");
    if (int(I.size()) == b.n()) throw precondition_error("corner support must be a proper subset");
    s.kind_ = Kind::corner;
    s.I_ = std::move(I);
    s.box_ = std::move(b);
    return s;
  }

  Kind kind() const { return kind_; }
  int n() const { return box_.n(); }
  const std::vector<int>& support() const { return I_; }
  const BoxSpec& box_part() const { return box_; }

 private:
  Kind kind_ = Kind::box;
  std::vector<int> I_;
  BoxSpec box_;
};

namespace detail {

// Shared layout for the corner-membership systems: witness reduced
// coordinates w_0..w_{n-2} (w_{n-1} is pinned to 0), then one escape depth
// per index off I. extra counts trailing parameter symbols.
struct CornerSystem {
  int n;
  std::vector<int> I;
  std::vector<int> cone;     // ambient indices not in I, ascending
  std::vector<int> lam_pos;  // ambient index -> symbol slot, -1 inside I
  int var_count;

  CornerSystem(int n_, const std::vector<int>& I_) : n(n_), I(I_) {
    lam_pos.assign(n, -1);
    for (int l = 0; l < n; ++l)
      if (!std::binary_search(I.begin(), I.end(), l)) {
        lam_pos[l] = (n - 1) + int(cone.size());
        cone.push_back(l);
      }
    var_count = (n - 1) + int(cone.size());
  }

  // Adds s * y_m to a coefficient row, where y_m = w_m - lambda_m is the
  // m-th coordinate of the witness point after escaping.
  void add_y(std::vector<Rat>& c, int m, const Rat& s) const {
    if (m < n - 1) c[1 + m] += s;
    if (lam_pos[m] >= 0) c[1 + lam_pos[m]] -= s;
  }

  std::vector<Rat> row(int nsym) const { return std::vector<Rat>(nsym + 1, Rat(0)); }
};

}  // namespace detail

// Exact membership in a basic open set. Box sets contain interior points
// only; a corner set around I contains x iff I is inside the support of x
// and some interior witness in the swept box projects onto x, which is a
// rational linear feasibility question.
inline bool nbhd_contains(const NeighborhoodSpec& spec, const ApartmentPoint& x) {
  const int n = spec.n();
  if (x.n() != n) throw precondition_error("neighborhood/point dimension mismatch");
  if (spec.kind() == NeighborhoodSpec::Kind::box) {
    if (!x.is_interior()) return false;
    for (int m = 0; m < n - 1; ++m) {
      Rat red = x.coord(m) - x.coord(n - 1);
      const auto& [lo, hi] = spec.box_part().intervals[m];
      if (!(lo < red && red < hi)) return false;
    }
    return true;
  }
  for (int i : spec.support())
    if (!x.has(i)) return false;

  detail::CornerSystem cs(n, spec.support());
  const int nsym = cs.var_count;
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
    auto r = cs.row(nsym);
    r[1 + cs.lam_pos[l]] = 1;
    sys.add(std::move(r), false);
  }
  const auto& J = x.support();
  for (std::size_t k = 0; k + 1 < J.size(); ++k) {
    auto r = cs.row(nsym);
    cs.add_y(r, J[k], Rat(1));
    cs.add_y(r, J[k + 1], Rat(-1));
    r[0] = -(x.coords()[k] - x.coords()[k + 1]);
    sys.add_eq(r);
  }
  std::vector<int> vars(nsym);
  for (int k = 0; k < nsym; ++k) vars[k] = k;
  sys.eliminate_all(vars);
  return sys.constant_rows_feasible();
}

// The canonical countable fundamental system of a point: shrinking boxes for
// interior points; for boundary points, corner sets whose box is centered on
// the canonical interior lift pushed k deep off the support, with radius 1/k.
inline std::vector<NeighborhoodSpec> fundamental_neighborhoods(const ApartmentPoint& x, int count) {
  if (count < 1) throw precondition_error("need a positive neighborhood count");
  const int n = x.n();
  std::vector<NeighborhoodSpec> out;
  for (int k = 1; k <= count; ++k) {
    Rat eps = Rat(1) / k;
    std::vector<Rat> center(n);
    for (int m = 0; m < n; ++m) center[m] = x.has(m) ? x.coord(m) : Rat(-k);
    std::vector<Rat> reduced(n - 1);
    for (int m = 0; m < n - 1; ++m) reduced[m] = center[m] - center[n - 1];
    BoxSpec b = BoxSpec::around(reduced, eps);
    if (x.is_interior())
      out.push_back(NeighborhoodSpec::box(std::move(b)));
    else
      out.push_back(NeighborhoodSpec::corner(x.support(), std::move(b)));
  }
  return out;
}

// Root-filtration level computed from the closure definition instead of the
// closed form: x lies in cl{a >= s} iff every canonical fundamental
// neighborhood meets the half-space, i.e. iff the witness system
//   |w - lift(x)| < eps componentwise,  lambda_l >= K off the support,
//   a(w - lambda) >= S
// is feasible with eps = 1/K for every K >= 1. Eliminating the witness
// symbols leaves rows linear in (EPS, K, S); because the neighborhoods are
// nested, "for every K" equals "for all large K", so each row reduces to a
// condition on S alone:
//   K-coefficient > 0: eventually satisfied, no condition;
//   K-coefficient < 0: eventually violated, no S works;
//   otherwise the EPS term (-> 0+) only tunes strictness of c0 + cS*S >= 0.
// The level is minus the supremum of the feasible S.
inline ExtVal f_value_by_closure(const Root& a, const ApartmentPoint& x) {
  const int n = x.n();
  if (a.i >= n || a.j >= n) throw precondition_error("root indices out of range");
  detail::CornerSystem cs(n, x.support());
  const int eps_sym = cs.var_count;
  const int k_sym = cs.var_count + 1;
  const int s_sym = cs.var_count + 2;
  const int nsym = cs.var_count + 3;

  std::vector<Rat> lift(n);
  for (int m = 0; m < n; ++m) lift[m] = x.has(m) ? x.coord(m) : Rat(0);

  LinSystem sys(nsym);
  for (int m = 0; m < n - 1; ++m) {
    Rat c = lift[m] - lift[n - 1];
    auto r1 = cs.row(nsym);
    r1[0] = -c;
    r1[1 + m] = 1;
    r1[1 + eps_sym] = 1;
    sys.add(std::move(r1), true);
    auto r2 = cs.row(nsym);
    r2[0] = c;
    r2[1 + m] = -1;
    r2[1 + eps_sym] = 1;
    sys.add(std::move(r2), true);
  }
  for (int l : cs.cone) {
    auto r = cs.row(nsym);
    r[1 + cs.lam_pos[l]] = 1;
    r[1 + k_sym] = -1;
    sys.add(std::move(r), false);
  }
  {
    auto r = cs.row(nsym);
    cs.add_y(r, a.i, Rat(1));
    cs.add_y(r, a.j, Rat(-1));
    r[1 + s_sym] = -1;
    sys.add(std::move(r), false);
  }

  std::vector<int> vars(cs.var_count);
  for (int k = 0; k < cs.var_count; ++k) vars[k] = k;
  sys.eliminate_all(vars);

  bool have_bound = false;
  Rat best;  // supremum of feasible S
  for (const auto& r : sys.rows()) {
    const Rat& c0 = r.c[0];
    const Rat& ce = r.c[1 + eps_sym];
    const Rat& ck = r.c[1 + k_sym];
    const Rat& cscoef = r.c[1 + s_sym];
    if (ck > 0) continue;
    if (ck < 0) return ExtVal::pos_inf();
    bool strict_eff = ce > 0 ? false : (ce < 0 ? true : r.strict);
    if (cscoef == 0) {
      if (strict_eff ? c0 > 0 : c0 >= 0) continue;
      return ExtVal::pos_inf();
    }
    if (cscoef > 0) throw error("internal: closure system produced a lower threshold bound");
    Rat b = c0 / -cscoef;
    if (!have_bound || b < best) {
      best = b;
      have_bound = true;
    }
  }
  if (!have_bound) return ExtVal::neg_inf();
  return ExtVal(-best);
}

}  // namespace btb
