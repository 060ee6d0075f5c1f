#pragma once

#include <set>
#include <vector>

#include "btb/rational.hpp"

namespace btb {

// One linear constraint c[0] + sum_k c[k+1]*sym_k >= 0 (or > 0 when strict).
struct LinRow {
  std::vector<Rat> c;
  bool strict = false;
};

// Exact Fourier-Motzkin elimination over Q. Sound and complete for strict and
// non-strict rational linear systems; the problems here are tiny (at most a
// dozen symbols), so the quadratic row growth per step is irrelevant.
class LinSystem {
 public:
  explicit LinSystem(int nsym) : nsym_(nsym) {}

  int sym_count() const { return nsym_; }
  const std::vector<LinRow>& rows() const { return rows_; }

  // coeffs = {c0, c1, ..., c_nsym}
  void add(std::vector<Rat> coeffs, bool strict) {
    if (int(coeffs.size()) != nsym_ + 1) throw precondition_error("linear row arity mismatch");
    rows_.push_back(LinRow{std::move(coeffs), strict});
  }

  void add_eq(const std::vector<Rat>& coeffs) {
    add(coeffs, false);
    std::vector<Rat> neg(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) neg[i] = -coeffs[i];
    add(std::move(neg), false);
  }

  // Eliminate symbol k (0-based); its coefficient becomes zero in every row.
  void eliminate(int k) {
    std::vector<LinRow> zero, pos, neg;
    for (auto& r : rows_) {
      const Rat& a = r.c[k + 1];
      if (a == 0)
        zero.push_back(std::move(r));
      else if (a > 0)
        pos.push_back(std::move(r));
      else
        neg.push_back(std::move(r));
    }
    rows_ = std::move(zero);
    for (const auto& P : pos)
      for (const auto& N : neg) {
        // a_P > 0 gives a lower bound, a_N < 0 an upper bound; their
        // positive combination removes the symbol.
        Rat sp = -N.c[k + 1], sn = P.c[k + 1];
        LinRow row;
        row.c.resize(nsym_ + 1);
        for (int i = 0; i <= nsym_; ++i) row.c[i] = sp * P.c[i] + sn * N.c[i];
        row.strict = P.strict || N.strict;
        rows_.push_back(std::move(row));
      }
    dedup();
  }

  void eliminate_all(const std::vector<int>& ks) {
    for (int k : ks) eliminate(k);
  }

  // Valid only once every symbol has been eliminated: each row is a constant.
  bool constant_rows_feasible() const {
    for (const auto& r : rows_) {
      for (int i = 1; i <= nsym_; ++i)
        if (r.c[i] != 0) throw precondition_error("system still has free symbols");
      if (r.strict ? !(r.c[0] > 0) : !(r.c[0] >= 0)) return false;
    }
    return true;
  }

 private:
  // Normalize scale (positive factor only) and drop duplicates and trivially
  // true rows to keep intermediate systems small.
  void dedup() {
    std::set<std::pair<std::vector<Rat>, bool>> seen;
    std::vector<LinRow> kept;
    for (auto& r : rows_) {
      Rat lead = 0;
      for (int i = 0; i <= nsym_; ++i)
        if (r.c[i] != 0) {
          lead = r.c[i] < 0 ? -r.c[i] : r.c[i];
          break;
        }
      if (lead == 0) {
        if (!r.strict) continue;  // 0 > 0 is kept: it marks infeasibility
      } else {
        bool only_const = true;
        for (int i = 1; i <= nsym_; ++i)
          if (r.c[i] != 0) only_const = false;
        if (only_const && (r.strict ? r.c[0] > 0 : r.c[0] >= 0)) continue;
        for (int i = 0; i <= nsym_; ++i) r.c[i] /= lead;
      }
      auto key = std::make_pair(r.c, r.strict);
      if (seen.insert(key).second) kept.push_back(std::move(r));
    }
    rows_ = std::move(kept);
  }

  int nsym_;
  std::vector<LinRow> rows_;
};

}  // namespace btb
