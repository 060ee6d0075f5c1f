#pragma once

#include <numeric>
#include <vector>

#include "btb/matrix.hpp"
#include "btb/rational.hpp"

namespace btb {

// Invertible matrix up to scalars. Canonical representative: primitive
// integer matrix (entry gcd 1) whose first nonzero entry in row-major order
// is positive; equality of group elements is equality of representatives.
class ProjElement {
 public:
  static ProjElement make(RatMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw precondition_error("group element must be square");
    if (det(m) == 0) throw precondition_error("group element must be invertible");
    Int l = 1;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, rat_den(m.at(i, j)));
    Int g = 0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) g = boost::multiprecision::gcd(g, Int(rat_num(m.at(i, j)) * l / rat_den(m.at(i, j))));
    Rat scale = Rat(l) / Rat(g);
    for (int k = 0; k < m.rows() * m.cols(); ++k) {
      const Rat& x = m.at(k / m.cols(), k % m.cols());
      if (x != 0) {
        if (x * scale < 0) scale = -scale;
        break;
      }
    }
    ProjElement e;
    e.mat_ = m.scaled(scale);
    return e;
  }

  const RatMatrix& matrix() const { return mat_; }
  int n() const { return mat_.rows(); }

  ProjElement operator*(const ProjElement& o) const { return make(mat_ * o.matrix()); }
  ProjElement inverse_element() const { return make(inverse(mat_)); }

  friend bool operator==(const ProjElement& a, const ProjElement& b) { return a.mat_ == b.mat_; }
  friend bool operator!=(const ProjElement& a, const ProjElement& b) { return !(a == b); }

 private:
  ProjElement() = default;
  RatMatrix mat_;
};

// Monomial element: permutation combined with integral diagonal valuations.
// Its matrix sends basis vector v_i to p^{vals[i]} * v_{perm[i]}.
struct MonomialElement {
  std::vector<int> perm;   // 0-based images; a permutation of 0..n-1
  std::vector<long> vals;

  static MonomialElement make(std::vector<int> perm, std::vector<long> vals) {
    if (perm.size() != vals.size() || perm.empty()) throw precondition_error("monomial element shape mismatch");
    std::vector<bool> seen(perm.size(), false);
    for (int x : perm) {
      if (x < 0 || x >= int(perm.size()) || seen[x]) throw precondition_error("not a permutation");
      seen[x] = true;
    }
    return MonomialElement{std::move(perm), std::move(vals)};
  }

  int n() const { return int(perm.size()); }

  RatMatrix to_matrix(long p) const {
    RatMatrix m(n(), n());
    for (int i = 0; i < n(); ++i) m.at(perm[i], i) = p_power_rat(p, vals[i]);
    return m;
  }

  // this∘other, matching matrix multiplication to_matrix(this)*to_matrix(other)
  MonomialElement compose(const MonomialElement& other) const {
    if (n() != other.n()) throw precondition_error("monomial composition size mismatch");
    std::vector<int> cp(n());
    std::vector<long> cv(n());
    for (int i = 0; i < n(); ++i) {
      cp[i] = perm[other.perm[i]];
      cv[i] = other.vals[i] + vals[other.perm[i]];
    }
    return MonomialElement{std::move(cp), std::move(cv)};
  }

  MonomialElement inverse_element() const {
    std::vector<int> ip(n());
    std::vector<long> iv(n());
    for (int i = 0; i < n(); ++i) ip[perm[i]] = i;
    for (int j = 0; j < n(); ++j) iv[j] = -vals[ip[j]];
    return MonomialElement{std::move(ip), std::move(iv)};
  }

  friend bool operator==(const MonomialElement& a, const MonomialElement& b) {
    return a.perm == b.perm && a.vals == b.vals;
  }

 private:
  static Rat p_power_rat(long p, long e) {
    Rat r = 1;
    long k = e < 0 ? -e : e;
    for (long i = 0; i < k; ++i) r *= p;
    return e < 0 ? Rat(1) / r : r;
  }
};

// Elementary unipotent element 1 + omega*E_{ij} (i != j).
struct RootGroupElement {
  int i, j;  // 0-based, distinct
  Rat omega;

  static RootGroupElement make(int i, int j, Rat omega) {
    if (i == j || i < 0 || j < 0) throw precondition_error("root indices must be distinct and non-negative");
    return RootGroupElement{i, j, std::move(omega)};
  }

  RatMatrix to_matrix(int n) const {
    if (i >= n || j >= n) throw precondition_error("root index exceeds dimension");
    RatMatrix m = RatMatrix::identity(n);
    m.at(i, j) = omega;
    return m;
  }
};

// Valuation of the off-diagonal entry; +inf exactly for the identity.
inline ExtVal psi(const RootGroupElement& u, long p) { return valuation(u.omega, p); }

}  // namespace btb
