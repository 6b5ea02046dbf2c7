#ifndef AHS_MATRIX_HPP
#define AHS_MATRIX_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "ahs/rational.hpp"

namespace ahs {

// Dense matrix of arbitrary-precision rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static ExactMatrix identity(size_t n) {
    ExactMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool is_diagonal() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (i != j && at(i, j) != 0) return false;
    return true;
  }

  // Determinant via fraction-free (Bareiss) elimination: denominators are
  // cleared per row, then all intermediate divisions are exact over Z.
  Rat det() const {
    if (rows_ != cols_) throw std::domain_error("det: matrix not square");
    size_t n = rows_;
    if (n == 0) return rat(1);
    if (is_diagonal()) {
      Rat d = 1;
      for (size_t i = 0; i < n; ++i) d *= at(i, i);
      return d;
    }
    Rat scale = 1;
    std::vector<Int> m(n * n);
    for (size_t i = 0; i < n; ++i) {
      Int lcm = 1;
      for (size_t j = 0; j < n; ++j) {
        Int l;
        mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), at(i, j).get_den_mpz_t());
        lcm = l;
      }
      scale *= rat(Int(1), lcm);
      for (size_t j = 0; j < n; ++j) {
        Rat v = at(i, j) * rat(lcm);
        m[i * n + j] = v.get_num();  // denominator is 1 after scaling
      }
    }
    int sign = 1;
    Int prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
      size_t piv = k;
      while (piv < n && m[piv * n + k] == 0) ++piv;
      if (piv == n) return rat(0);
      if (piv != k) {
        for (size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
        sign = -sign;
      }
      for (size_t i = k + 1; i < n; ++i)
        for (size_t j = k + 1; j < n; ++j) {
          Int t = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
          mpz_divexact(m[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        }
      for (size_t i = k + 1; i < n; ++i) m[i * n + k] = 0;
      prev = m[k * n + k];
    }
    return rat(sign * m[n * n - 1]) * scale;
  }

  // Row echelon reduction over Q (in place on a copy); returns pivot columns.
  std::vector<size_t> echelon(ExactMatrix& out) const {
    out = *this;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
      size_t piv = row;
      while (piv < rows_ && out.at(piv, col) == 0) ++piv;
      if (piv == rows_) continue;
      if (piv != row)
        for (size_t j = 0; j < cols_; ++j) std::swap(out.at(piv, j), out.at(row, j));
      Rat inv = 1 / out.at(row, col);
      for (size_t j = col; j < cols_; ++j) out.at(row, j) *= inv;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == row || out.at(i, col) == 0) continue;
        Rat f = out.at(i, col);
        for (size_t j = col; j < cols_; ++j) out.at(i, j) -= f * out.at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  size_t rank() const {
    ExactMatrix tmp;
    return echelon(tmp).size();
  }

  // Basis of the right kernel over Q.  Deterministic: one vector per free
  // column in ascending column order, with 1 in the free position.
  std::vector<std::vector<Rat>> kernel_basis() const {
    ExactMatrix rref;
    std::vector<size_t> pivots = echelon(rref);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (size_t free_col = 0; free_col < cols_; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<Rat> v(cols_, Rat(0));
      v[free_col] = 1;
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rref.at(r, free_col);
      for (const Rat& c : v) {
        if (c == 0) continue;
        if (c < 0)
          for (Rat& x : v) x = -x;
        break;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::vector<Rat> mul_vec(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw std::domain_error("mul_vec: size mismatch");
    std::vector<Rat> out(rows_, Rat(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
    return out;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rat> a_;
};

// Integer matrix helpers for lattice work.
using IntMatrix = std::vector<std::vector<Int>>;

// Given an R x r integer matrix M whose columns are a basis of a *saturated*
// rank-r sublattice of Z^R, returns an R x R unimodular matrix whose first r
// columns span the same sublattice; the last R-r columns complete it to a
// basis of Z^R.  Throws if the span is not saturated.
//
// Method: reduce M to [H; 0] by integer row operations (H upper triangular),
// mirroring each operation with the inverse column operation on an identity
// accumulator Q, so that M = Q * [H; 0] throughout.  Saturation forces
// |det H| = 1, and then the columns of Q do the job.
inline IntMatrix complete_saturated_basis(const IntMatrix& M) {
  size_t R = M.size();
  if (R == 0) throw std::domain_error("complete_saturated_basis: empty matrix");
  size_t r = M[0].size();
  if (r > R) throw std::domain_error("complete_saturated_basis: more columns than rows");

  IntMatrix A = M;
  IntMatrix Q(R, std::vector<Int>(R, 0));
  for (size_t i = 0; i < R; ++i) Q[i][i] = 1;

  // Row op on A: row_i += c * row_k  <=>  Q: col_k -= c * col_i.
  auto add_row = [&](size_t i, size_t k, const Int& c) {
    for (size_t j = 0; j < r; ++j) A[i][j] += c * A[k][j];
    for (size_t j = 0; j < R; ++j) Q[j][k] -= c * Q[j][i];
  };
  auto swap_rows = [&](size_t i, size_t k) {
    std::swap(A[i], A[k]);
    for (size_t j = 0; j < R; ++j) std::swap(Q[j][i], Q[j][k]);
  };
  auto negate_row = [&](size_t i) {
    for (size_t j = 0; j < r; ++j) A[i][j] = -A[i][j];
    for (size_t j = 0; j < R; ++j) Q[j][i] = -Q[j][i];
  };

  for (size_t col = 0; col < r; ++col) {
    // Euclidean gcd chase down the column.
    for (;;) {
      size_t best = col;
      Int best_abs = 0;
      for (size_t i = col; i < R; ++i) {
        Int v = abs(A[i][col]);
        if (v != 0 && (best_abs == 0 || v < best_abs)) {
          best_abs = v;
          best = i;
        }
      }
      if (best_abs == 0) throw std::domain_error("complete_saturated_basis: rank deficient");
      if (best != col) swap_rows(best, col);
      if (A[col][col] < 0) negate_row(col);
      bool clean = true;
      for (size_t i = col + 1; i < R; ++i) {
        if (A[i][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[col][col].get_mpz_t());
        add_row(i, col, -q);
        if (A[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  for (size_t col = 0; col < r; ++col)
    if (A[col][col] != 1)
      throw std::domain_error("complete_saturated_basis: sublattice not saturated");
  return Q;
}

// Schur complement of the leading r x r block: the Gram matrix of the
// quotient metric when the first r basis vectors span the sub-bundle.
inline ExactMatrix schur_complement(const ExactMatrix& G, size_t r) {
  size_t R = G.rows();
  if (G.cols() != R || r > R) throw std::domain_error("schur_complement: bad shapes");
  // Solve G11 * X = G12 by Gauss-Jordan on [G11 | G12].
  size_t q = R - r;
  ExactMatrix aug(r, r + q);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < r; ++j) aug.at(i, j) = G.at(i, j);
    for (size_t j = 0; j < q; ++j) aug.at(i, r + j) = G.at(i, r + j);
  }
  ExactMatrix rref;
  std::vector<size_t> piv = aug.echelon(rref);
  if (piv.size() != r) throw std::domain_error("schur_complement: singular leading block");
  ExactMatrix out(q, q);
  for (size_t i = 0; i < q; ++i)
    for (size_t j = 0; j < q; ++j) {
      Rat acc = G.at(r + i, r + j);
      for (size_t k = 0; k < r; ++k) acc -= G.at(r + i, k) * rref.at(k, r + j);
      out.at(i, j) = acc;
    }
  return out;
}

}  // namespace ahs

#endif  // AHS_MATRIX_HPP
