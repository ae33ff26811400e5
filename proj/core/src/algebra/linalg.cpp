#include "selmerlab/algebra/linalg.hpp"

namespace selmerlab::algebra {

MatN zero_matrix(const Field& F, std::size_t rows, std::size_t cols) { return MatN(rows, cols, F.zero()); }

MatN identity_matrix(const Field& F, std::size_t n) { return identity(F, n); }

namespace {

// Row echelon form in place; returns pivot columns. `det_scale` accumulates
// the determinant factor of the row operations when provided.
std::vector<std::size_t> echelon(const Field& F, MatN& A, FieldElem* det_acc) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < A.cols() && row < A.rows(); ++c) {
    std::size_t piv = row;
    while (piv < A.rows() && A(piv, c).v == 0) ++piv;
    if (piv == A.rows()) continue;
    if (piv != row) {
      for (std::size_t k = 0; k < A.cols(); ++k) std::swap(A(piv, k), A(row, k));
      if (det_acc) *det_acc = F.neg(*det_acc);
    }
    const FieldElem inv = F.inv(A(row, c));
    if (det_acc) *det_acc = F.mul(*det_acc, A(row, c));
    for (std::size_t k = 0; k < A.cols(); ++k) A(row, k) = F.mul(A(row, k), inv);
    for (std::size_t r = 0; r < A.rows(); ++r) {
      if (r == row || A(r, c).v == 0) continue;
      const FieldElem f = A(r, c);
      for (std::size_t k = 0; k < A.cols(); ++k) A(r, k) = F.sub(A(r, k), F.mul(f, A(row, k)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Field& F, MatN A) { return echelon(F, A, nullptr).size(); }

FieldElem det(const Field& F, MatN A) {
  require(A.is_square(), "determinant of a non-square matrix");
  FieldElem acc = F.one();
  const auto piv = echelon(F, A, &acc);
  if (piv.size() < A.rows()) return F.zero();
  return acc;
}

std::optional<MatN> inverse(const Field& F, const MatN& A) {
  require(A.is_square(), "inverse of a non-square matrix");
  const std::size_t n = A.rows();
  MatN aug(n, 2 * n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n + i) = F.one();
  }
  const auto piv = echelon(F, aug, nullptr);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  MatN out(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

FieldElem trace(const Field& F, const MatN& A) {
  FieldElem t = F.zero();
  for (std::size_t i = 0; i < A.rows() && i < A.cols(); ++i) t = F.add(t, A(i, i));
  return t;
}

std::optional<AffineSolution> solve_affine(const Field& F, const MatN& A, const Vec& b) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  require(b.size() == m, "right-hand side has the wrong length");
  MatN aug(m, n + 1, F.zero());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n) = b[i];
  }
  const auto piv = echelon(F, aug, nullptr);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  AffineSolution sol;
  sol.particular.assign(n, F.zero());
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    is_pivot[piv[r]] = true;
    sol.particular[piv[r]] = aug(r, n);
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, F.zero());
    v[free] = F.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(aug(r, free));
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace selmerlab::algebra
