#pragma once

#include <algorithm>
#include <vector>

#include "btb/rational.hpp"

namespace btb {

// Dense exact rational matrix. Row-major storage; all algebra is exact.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return a_[idx(r, c)]; }
  const Rat& at(int r, int c) const { return a_[idx(r, c)]; }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

  // Total order on (rows, cols, entries), used for deterministic sorting only.
  friend bool operator<(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    for (std::size_t k = 0; k < a.a_.size(); ++k)
      if (a.a_[k] != b.a_[k]) return a.a_[k] < b.a_[k];
    return false;
  }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw precondition_error("matrix product shape mismatch");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o.at(k, j) == 0) continue;
          r.at(i, j) += x * o.at(k, j);
        }
      }
    return r;
  }

  RatMatrix scaled(const Rat& s) const {
    RatMatrix r = *this;
    for (auto& x : r.a_) x *= s;
    return r;
  }

  RatMatrix transpose() const {
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  RatMatrix col(int c) const { return columns({c}); }

  RatMatrix columns(const std::vector<int>& cs) const {
    RatMatrix r(rows_, int(cs.size()));
    for (int j = 0; j < int(cs.size()); ++j) {
      if (cs[j] < 0 || cs[j] >= cols_) throw precondition_error("column index out of range");
      for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, cs[j]);
    }
    return r;
  }

  static RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_) throw precondition_error("hstack row mismatch");
    RatMatrix r(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
      for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
  }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x == 0; });
  }

 private:
  std::size_t idx(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw precondition_error("matrix index out of range");
    return std::size_t(r) * cols_ + c;
  }
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline int rank(RatMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(r, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

inline Rat det(RatMatrix m) {
  if (m.rows() != m.cols()) throw precondition_error("determinant of non-square matrix");
  Rat d = 1;
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(c, c);
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

// Exact solve A X = B for full-column-rank A; throws if A is rank deficient
// or the system is inconsistent (B not contained in the column span of A).
inline RatMatrix solve(const RatMatrix& A, const RatMatrix& B) {
  if (A.rows() != B.rows()) throw precondition_error("solve: row mismatch");
  int n = A.rows(), m = A.cols(), k = B.cols();
  RatMatrix w = RatMatrix::hstack(A, B);
  std::vector<int> pivot_of_col(m, -1);
  int r = 0;
  for (int c = 0; c < m && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (w.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m + k; ++j) std::swap(w.at(piv, j), w.at(r, j));
    Rat pv = w.at(r, c);
    for (int j = 0; j < m + k; ++j) w.at(r, j) /= pv;
    for (int i = 0; i < n; ++i) {
      if (i == r || w.at(i, c) == 0) continue;
      Rat f = w.at(i, c);
      for (int j = c; j < m + k; ++j) w.at(i, j) -= f * w.at(r, j);
    }
    pivot_of_col[c] = r;
    ++r;
  }
  for (int c = 0; c < m; ++c)
    if (pivot_of_col[c] < 0) throw precondition_error("solve: matrix is rank deficient");
  for (int i = r; i < n; ++i)
    for (int j = 0; j < k; ++j)
      if (w.at(i, m + j) != 0) throw precondition_error("solve: inconsistent system");
  RatMatrix X(m, k);
  for (int c = 0; c < m; ++c)
    for (int j = 0; j < k; ++j) X.at(c, j) = w.at(pivot_of_col[c], m + j);
  return X;
}

inline RatMatrix inverse(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw precondition_error("inverse of non-square matrix");
  return solve(A, RatMatrix::identity(A.rows()));
}

// Reduced column echelon form over Q: the canonical basis of the column span.
// Zero columns (from dependent generating sets) are dropped.
inline RatMatrix column_echelon_q(const RatMatrix& A) {
  int n = A.rows(), m = A.cols();
  std::vector<std::vector<Rat>> cols(m, std::vector<Rat>(n));
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = A.at(i, j);
  int placed = 0;
  for (int r = 0; r < n && placed < m; ++r) {
    int piv = -1;
    for (int j = placed; j < m; ++j)
      if (cols[j][r] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    std::swap(cols[placed], cols[piv]);
    Rat pv = cols[placed][r];
    for (int i = 0; i < n; ++i) cols[placed][i] /= pv;
    for (int j = 0; j < m; ++j) {
      if (j == placed || cols[j][r] == 0) continue;
      Rat f = cols[j][r];
      for (int i = 0; i < n; ++i) cols[j][i] -= f * cols[placed][i];
    }
    ++placed;
  }
  RatMatrix r(n, placed);
  for (int j = 0; j < placed; ++j)
    for (int i = 0; i < n; ++i) r.at(i, j) = cols[j][i];
  return r;
}

inline bool same_column_span_q(const RatMatrix& A, const RatMatrix& B) {
  if (A.rows() != B.rows()) return false;
  return column_echelon_q(A) == column_echelon_q(B);
}

}  // namespace btb
