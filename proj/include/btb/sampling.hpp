#pragma once

#include <cstdint>
#include <vector>

#include "btb/convergence.hpp"
#include "btb/elements.hpp"
#include "btb/lattice.hpp"
#include "btb/norm_point.hpp"

namespace btb {

// Deterministic generator (splitmix64) so sampled checks reproduce across
// platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    s_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], both ends included.
  long range(long lo, long hi) {
    if (lo > hi) throw precondition_error("empty sampling range");
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t s_;
};

inline Rat random_rat(Rng& rng, long num_bound, long den_bound) {
  return Rat(rng.range(-num_bound, num_bound)) / rng.range(1, den_bound);
}

inline std::vector<int> random_support(Rng& rng, int n) {
  while (true) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (rng.coin()) s.push_back(i);
    if (!s.empty()) return s;
  }
}

inline ApartmentPoint random_point(Rng& rng, int n) {
  std::vector<int> sup = random_support(rng, n);
  std::vector<Rat> co;
  for (std::size_t k = 0; k < sup.size(); ++k) co.push_back(random_rat(rng, 6, 3));
  return ApartmentPoint::make(n, std::move(sup), std::move(co));
}

inline ApartmentPoint random_interior(Rng& rng, int n) {
  std::vector<Rat> co;
  for (int i = 0; i < n; ++i) co.push_back(random_rat(rng, 6, 3));
  return ApartmentPoint::interior(n, std::move(co));
}

// Random class of the given rank: integer columns, occasionally rescaled by
// p, resampled until independent.
inline LatticeClass random_lattice(Rng& rng, int n, long p, int m) {
  while (true) {
    RatMatrix b(n, m);
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < n; ++r) b.at(r, c) = Rat(rng.range(-p * p, p * p));
    for (int c = 0; c < m; ++c) {
      long e = rng.range(-1, 2);
      if (e != 0)
        for (int r = 0; r < n; ++r) b.at(r, c) *= p_power(p, e);
    }
    if (rank(b) == m) return LatticeClass::make(n, p, b);
  }
}

inline LatticeClass random_diagonal_class(Rng& rng, int n, long p) {
  std::vector<int> sup = random_support(rng, n);
  std::vector<long> exps;
  for (std::size_t k = 0; k < sup.size(); ++k) exps.push_back(rng.range(-4, 4));
  return LatticeClass::diagonal(n, p, sup, exps);
}

// Product of elementary integer row operations: invertible over Z_(p) with
// unit determinant.
inline ProjElement random_unimodular(Rng& rng, int n, long p) {
  RatMatrix m = RatMatrix::identity(n);
  int ops = int(rng.range(4, 9));
  for (int t = 0; t < ops; ++t) {
    int kind = int(rng.range(0, 2));
    int a = int(rng.range(0, n - 1));
    int b = int(rng.range(0, n - 1));
    if (kind == 0 && a != b) {
      Rat c = Rat(rng.range(-3, 3));
      for (int j = 0; j < n; ++j) m.at(a, j) += c * m.at(b, j);
    } else if (kind == 1 && a != b) {
      for (int j = 0; j < n; ++j) std::swap(m.at(a, j), m.at(b, j));
    } else {
      long u = rng.range(1, 2 * p - 1);
      if (u % p == 0) ++u;
      for (int j = 0; j < n; ++j) m.at(a, j) *= u;
    }
  }
  return ProjElement::make(m);
}

inline ProjElement random_proj(Rng& rng, int n, long p) {
  RatMatrix d(n, n);
  for (int i = 0; i < n; ++i) d.at(i, i) = p_power(p, rng.range(-2, 2));
  return random_unimodular(rng, n, p) * ProjElement::make(d) * random_unimodular(rng, n, p);
}

inline MonomialElement random_monomial(Rng& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[int(rng.range(0, i))]);
  std::vector<long> vals;
  for (int i = 0; i < n; ++i) vals.push_back(rng.range(-3, 3));
  return MonomialElement::make(std::move(perm), std::move(vals));
}

inline RootGroupElement random_root(Rng& rng, int n, long p) {
  int i = int(rng.range(0, n - 1));
  int j = int(rng.range(0, n - 2));
  if (j >= i) ++j;
  Rat omega = random_rat(rng, 5, 4) * p_power(p, rng.range(-2, 2));
  return RootGroupElement::make(i, j, omega);
}

inline RaySpec random_ray(Rng& rng, int n) {
  std::vector<Rat> dir;
  for (int i = 0; i < n; ++i) dir.push_back(Rat(rng.range(0, 3)));
  return RaySpec::make(random_interior(rng, n), std::move(dir));
}

inline LatticeSeqSpec random_seq(Rng& rng, int n, long p) {
  std::vector<long> b, d;
  for (int i = 0; i < n; ++i) b.push_back(rng.range(-4, 4));
  for (int i = 0; i < n; ++i) d.push_back(rng.range(0, 3));
  d[std::size_t(rng.range(0, n - 1))] = 0;
  return LatticeSeqSpec::make(p, n, std::move(b), std::move(d));
}

inline NormPoint random_norm_point(Rng& rng, int n, long p) {
  int m = int(rng.range(1, n));
  LatticeClass L = random_lattice(rng, n, p, m);
  std::vector<Rat> w;
  for (int j = 0; j < m; ++j) w.push_back(random_rat(rng, 4, 2));
  return NormPoint::make(p, n, L.basis(), std::move(w));
}

}  // namespace btb
