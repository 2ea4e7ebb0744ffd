#ifndef QF_MATRIX_HPP
#define QF_MATRIX_HPP

#include <vector>

#include "qf/poly.hpp"

namespace qf {

template <class R>
class Matrix {
 public:
  using Elem = typename R::Elem;

  R ring;
  size_t r = 0, c = 0;
  std::vector<Elem> a;  // row-major

  Matrix() = default;
  Matrix(R rg, size_t rows, size_t cols) : ring(std::move(rg)), r(rows), c(cols), a(rows * cols, ring.zero()) {}

  static Matrix identity(R rg, size_t n) {
    Matrix m(rg, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = m.ring.one();
    return m;
  }
  static Matrix from_rows(R rg, std::vector<std::vector<Elem>> rows) {
    Matrix m(rg, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < m.r; ++i) {
      if (rows[i].size() != m.c) throw ring_error("ragged matrix");
      for (size_t j = 0; j < m.c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  Elem& at(size_t i, size_t j) { return a[i * c + j]; }
  const Elem& at(size_t i, size_t j) const { return a[i * c + j]; }

  bool is_square() const { return r == c; }

  Matrix transpose() const {
    Matrix m(ring, c, r);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  bool equals(const Matrix& o) const {
    if (r != o.r || c != o.c) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!ring.eq(a[i], o.a[i])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& x : a)
      if (!ring.is_zero(x)) return false;
    return true;
  }

  bool is_alternating() const {
    if (!is_square()) return false;
    for (size_t i = 0; i < r; ++i) {
      if (!ring.is_zero(at(i, i))) return false;
      for (size_t j = i + 1; j < c; ++j)
        if (!ring.eq(at(i, j), ring.neg(at(j, i)))) return false;
    }
    return true;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = i + 1; j < c; ++j)
        if (!ring.eq(at(i, j), at(j, i))) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.r != y.r || x.c != y.c) throw ring_error("shape mismatch");
    Matrix m(x.ring, x.r, x.c);
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.ring.add(x.a[i], y.a[i]);
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.r != y.r || x.c != y.c) throw ring_error("shape mismatch");
    Matrix m(x.ring, x.r, x.c);
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.ring.sub(x.a[i], y.a[i]);
    return m;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c != y.r) throw ring_error("shape mismatch");
    Matrix m(x.ring, x.r, y.c);
    for (size_t i = 0; i < x.r; ++i)
      for (size_t k = 0; k < x.c; ++k) {
        if (x.ring.is_zero(x.at(i, k))) continue;
        for (size_t j = 0; j < y.c; ++j)
          m.at(i, j) = x.ring.add(m.at(i, j), x.ring.mul(x.at(i, k), y.at(k, j)));
      }
    return m;
  }

  Matrix scaled(const Elem& s) const {
    Matrix m = *this;
    for (auto& x : m.a) x = ring.mul(x, s);
    return m;
  }

  Matrix neg() const {
    Matrix m = *this;
    for (auto& x : m.a) x = ring.neg(x);
    return m;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (v.size() != c) throw ring_error("shape mismatch");
    std::vector<Elem> out(r, ring.zero());
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) out[i] = ring.add(out[i], ring.mul(at(i, j), v[j]));
    return out;
  }

  Matrix submatrix_omit(size_t oi, size_t oj) const {
    Matrix m(ring, r - 1, c - 1);
    for (size_t i = 0, ii = 0; i < r; ++i) {
      if (i == oi) continue;
      for (size_t j = 0, jj = 0; j < c; ++j) {
        if (j == oj) continue;
        m.at(ii, jj) = at(i, j);
        ++jj;
      }
      ++ii;
    }
    return m;
  }

  // keeps the given rows/cols (indices strictly increasing)
  Matrix select(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    Matrix m(ring, rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
    return m;
  }

  Matrix omit_row(size_t oi) const {
    Matrix m(ring, r - 1, c);
    for (size_t i = 0, ii = 0; i < r; ++i) {
      if (i == oi) continue;
      for (size_t j = 0; j < c; ++j) m.at(ii, j) = at(i, j);
      ++ii;
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Determinant.
//   - fields: Gaussian elimination
//   - other rings, n <= 12: division-free minor DP over column subsets
// ---------------------------------------------------------------------------
template <class R>
typename R::Elem det_subset_dp(const Matrix<R>& m) {
  const R& rg = m.ring;
  size_t n = m.r;
  if (n > 20) throw ring_error("determinant: matrix too large for division-free expansion");
  std::vector<typename R::Elem> dp(size_t(1) << n, rg.zero());
  dp[0] = rg.one();
  for (uint32_t s = 1; s < (1u << n); ++s) {
    size_t row = size_t(__builtin_popcount(s)) - 1;
    auto& out = dp[s];
    bool positive = true;
    // columns in increasing order; sign alternates from the top
    int seen = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!(s & (1u << j))) continue;
      ++seen;
      if (!rg.is_zero(m.at(row, j))) {
        auto prod = rg.mul(m.at(row, j), dp[s & ~(1u << j)]);
        // sign: (-1)^{row + index of j within s}; row == popcount-1, index = seen-1
        bool neg = ((row + size_t(seen - 1)) % 2) != 0;
        out = neg ? rg.sub(out, prod) : rg.add(out, prod);
      }
      (void)positive;
    }
  }
  return dp[(size_t(1) << n) - 1];
}

template <class R>
typename R::Elem det_gauss_field(Matrix<R> m) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  size_t n = m.r;
  auto det = rg.one();
  bool negate = false;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && rg.is_zero(m.at(piv, k))) ++piv;
    if (piv == n) return rg.zero();
    if (piv != k) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      negate = !negate;
    }
    det = rg.mul(det, m.at(k, k));
    auto inv = rg.inv(m.at(k, k));
    for (size_t i = k + 1; i < n; ++i) {
      if (rg.is_zero(m.at(i, k))) continue;
      auto f = rg.mul(m.at(i, k), inv);
      for (size_t j = k; j < n; ++j) m.at(i, j) = rg.sub(m.at(i, j), rg.mul(f, m.at(k, j)));
    }
  }
  return negate ? rg.neg(det) : det;
}

// Fraction-free (Bareiss) elimination; divisions are exact in the ring.
template <class R>
typename R::Elem det_bareiss(Matrix<R> m) {
  const R& rg = m.ring;
  size_t n = m.r;
  auto prev = rg.one();
  bool negate = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (rg.is_zero(m.at(k, k))) {
      size_t piv = k + 1;
      while (piv < n && rg.is_zero(m.at(piv, k))) ++piv;
      if (piv == n) return rg.zero();
      for (size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        auto num = rg.sub(rg.mul(m.at(i, j), m.at(k, k)), rg.mul(m.at(i, k), m.at(k, j)));
        m.at(i, j) = rg.exact_div(num, prev);
      }
    prev = m.at(k, k);
  }
  auto d = m.at(n - 1, n - 1);
  return negate ? rg.neg(d) : d;
}

template <class R>
typename R::Elem determinant(const Matrix<R>& m) {
  if (!m.is_square()) throw ring_error("determinant of non-square matrix");
  if (m.r == 0) return m.ring.one();
  if constexpr (R::is_field) {
    if (m.r > 6) return det_gauss_field(m);
  }
  if constexpr (std::is_same_v<R, ZZ>) {
    if (m.r > 6) return det_bareiss(m);
  }
  return det_subset_dp(m);
}

template <class R>
Matrix<R> adjugate(const Matrix<R>& m) {
  if (!m.is_square()) throw ring_error("adjugate of non-square matrix");
  const R& rg = m.ring;
  size_t n = m.r;
  Matrix<R> adj(rg, n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj.at(0, 0) = rg.one();
    return adj;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto mi = determinant(m.submatrix_omit(i, j));
      adj.at(j, i) = ((i + j) % 2) ? rg.neg(mi) : mi;  // transpose of cofactors
    }
  return adj;
}

// Pfaffian with the sign convention Pf(4x4) = x12 x34 - x13 x24 + x14 x23.
template <class R>
typename R::Elem pfaffian(const Matrix<R>& m) {
  const R& rg = m.ring;
  if (!m.is_square() || m.r % 2 != 0) throw ring_error("pfaffian needs an even-size matrix");
  if (!m.is_alternating()) throw ring_error("pfaffian of non-alternating matrix");
  // recursive expansion along the first row
  struct Rec {
    const R& rg;
    typename R::Elem run(const Matrix<R>& x) {
      size_t n = x.r;
      if (n == 0) return rg.one();
      if (n == 2) return x.at(0, 1);
      auto acc = rg.zero();
      for (size_t k = 1; k < n; ++k) {
        if (rg.is_zero(x.at(0, k))) continue;
        std::vector<size_t> keep;
        for (size_t t = 1; t < n; ++t)
          if (t != k) keep.push_back(t);
        auto sub = x.select(keep, keep);
        auto term = rg.mul(x.at(0, k), run(sub));
        // (-1)^k with 1-based column index k+1: + for k=1, - for k=2, ...
        acc = (k % 2 == 1) ? rg.add(acc, term) : rg.sub(acc, term);
      }
      return acc;
    }
  };
  Rec rec{rg};
  return rec.run(m);
}

// Pfaffian of the principal submatrix omitting one index of a 5x5 alternating
// matrix.
template <class R>
typename R::Elem principal_pfaffian(const Matrix<R>& X, size_t omit) {
  std::vector<size_t> keep;
  for (size_t t = 0; t < X.r; ++t)
    if (t != omit) keep.push_back(t);
  return pfaffian(X.select(keep, keep));
}

// ---------------------------------------------------------------------------
// Field linear algebra.
// ---------------------------------------------------------------------------
template <class R>
size_t rank_of(Matrix<R> m) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  size_t rank = 0;
  for (size_t col = 0; col < m.c && rank < m.r; ++col) {
    size_t piv = rank;
    while (piv < m.r && rg.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.r) continue;
    for (size_t j = 0; j < m.c; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    auto inv = rg.inv(m.at(rank, col));
    for (size_t j = col; j < m.c; ++j) m.at(rank, j) = rg.mul(m.at(rank, j), inv);
    for (size_t i = 0; i < m.r; ++i) {
      if (i == rank || rg.is_zero(m.at(i, col))) continue;
      auto f = m.at(i, col);
      for (size_t j = col; j < m.c; ++j) m.at(i, j) = rg.sub(m.at(i, j), rg.mul(f, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

// Reduced row echelon form; returns pivot column per row.
template <class R>
std::vector<size_t> rref(Matrix<R>& m) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  std::vector<size_t> pivots;
  size_t rank = 0;
  for (size_t col = 0; col < m.c && rank < m.r; ++col) {
    size_t piv = rank;
    while (piv < m.r && rg.is_zero(m.at(piv, col))) ++piv;
    if (piv == m.r) continue;
    for (size_t j = 0; j < m.c; ++j) std::swap(m.at(piv, j), m.at(rank, j));
    auto inv = rg.inv(m.at(rank, col));
    for (size_t j = 0; j < m.c; ++j) m.at(rank, j) = rg.mul(m.at(rank, j), inv);
    for (size_t i = 0; i < m.r; ++i) {
      if (i == rank || rg.is_zero(m.at(i, col))) continue;
      auto f = m.at(i, col);
      for (size_t j = 0; j < m.c; ++j) m.at(i, j) = rg.sub(m.at(i, j), rg.mul(f, m.at(rank, j)));
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

// Basis of the right kernel {v : m v = 0}.
template <class R>
std::vector<std::vector<typename R::Elem>> kernel_basis(Matrix<R> m) {
  static_assert(R::is_field);
  const R& rg = m.ring;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.c, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<typename R::Elem>> basis;
  for (size_t free = 0; free < m.c; ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename R::Elem> v(m.c, rg.zero());
    v[free] = rg.one();
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = rg.neg(m.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class R>
Matrix<R> inverse_field(const Matrix<R>& m) {
  static_assert(R::is_field);
  if (!m.is_square()) throw ring_error("inverse of non-square matrix");
  const R& rg = m.ring;
  size_t n = m.r;
  Matrix<R> aug(rg, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = rg.one();
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv[n - 1] != n - 1) throw ring_error("singular matrix");
  Matrix<R> inv(rg, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// Inverse over any commutative ring when det is a unit (adjugate route).
template <class R>
Matrix<R> inverse_unit_det(const Matrix<R>& m) {
  auto d = determinant(m);
  if (!m.ring.is_unit(d)) throw ring_error("matrix determinant is not a unit");
  return adjugate(m).scaled(m.ring.inv(d));
}

}  // namespace qf

#endif
