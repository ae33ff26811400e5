#pragma once

#include <cstddef>
#include <vector>

#include "selmerlab/support/errors.hpp"

namespace selmerlab::algebra {

// Dense row-major matrix over any ring whose arithmetic lives in a separate
// context object (Field, JetRing, PolyRing).
template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, E fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  E& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<E>& data() const { return a_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> a_;
};

template <class Ring>
Matrix<typename Ring::Elem> identity(const Ring& R, std::size_t n) {
  Matrix<typename Ring::Elem> m(n, n, R.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = R.one();
  return m;
}

template <class Ring>
Matrix<typename Ring::Elem> mat_mul(const Ring& R, const Matrix<typename Ring::Elem>& A,
                                    const Matrix<typename Ring::Elem>& B) {
  require(A.cols() == B.rows(), "matrix shape mismatch");
  Matrix<typename Ring::Elem> C(A.rows(), B.cols(), R.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const auto& a = A(i, k);
      if (R.is_zero(a)) continue;
      for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = R.add(C(i, j), R.mul(a, B(k, j)));
    }
  return C;
}

template <class Ring>
Matrix<typename Ring::Elem> mat_add(const Ring& R, Matrix<typename Ring::Elem> A,
                                    const Matrix<typename Ring::Elem>& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "matrix shape mismatch");
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = R.add(A(i, j), B(i, j));
  return A;
}

template <class Ring>
Matrix<typename Ring::Elem> mat_scale(const Ring& R, Matrix<typename Ring::Elem> A, const typename Ring::Elem& s) {
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = R.mul(A(i, j), s);
  return A;
}

template <class E>
Matrix<E> transpose(const Matrix<E>& A) {
  Matrix<E> T(A.cols(), A.rows(), A.rows() && A.cols() ? A(0, 0) : E{});
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

// Characteristic polynomial det(x·I − A), coefficients low to high, by
// Berkowitz's division-free algorithm; valid over any commutative ring.
template <class Ring>
std::vector<typename Ring::Elem> charpoly(const Ring& R, const Matrix<typename Ring::Elem>& A) {
  using E = typename Ring::Elem;
  require(A.is_square(), "characteristic polynomial of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return {R.one()};
  // Highest degree first while iterating.
  std::vector<E> C{R.one(), R.neg(A(n - 1, n - 1))};
  std::vector<E> v, w, t;
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t m = n - 1 - k;  // size of the trailing block
    t.assign(m + 2, R.zero());
    t[0] = R.one();
    t[1] = R.neg(A(k, k));
    v.assign(m, R.zero());
    for (std::size_t i = 0; i < m; ++i) v[i] = A(k + 1 + i, k);
    for (std::size_t j = 0; j < m; ++j) {
      E dot = R.zero();
      for (std::size_t i = 0; i < m; ++i) dot = R.add(dot, R.mul(A(k, k + 1 + i), v[i]));
      t[j + 2] = R.neg(dot);
      if (j + 1 == m) break;
      w.assign(m, R.zero());
      for (std::size_t r = 0; r < m; ++r) {
        E acc = R.zero();
        for (std::size_t c = 0; c < m; ++c) acc = R.add(acc, R.mul(A(k + 1 + r, k + 1 + c), v[c]));
        w[r] = acc;
      }
      v.swap(w);
    }
    std::vector<E> next(m + 2, R.zero());
    for (std::size_t i = 0; i < m + 2; ++i) {
      E acc = R.zero();
      for (std::size_t j = 0; j <= m && j <= i; ++j) acc = R.add(acc, R.mul(t[i - j], C[j]));
      next[i] = acc;
    }
    C.swap(next);
  }
  return std::vector<E>(C.rbegin(), C.rend());
}

template <class Ring>
typename Ring::Elem determinant(const Ring& R, const Matrix<typename Ring::Elem>& A) {
  auto cp = charpoly(R, A);
  return A.rows() % 2 == 0 ? cp[0] : R.neg(cp[0]);
}

// Discriminant (−1)^{N(N−1)/2}·∏ f′(α) of a monic polynomial given by its
// coefficients (low to high, last one equal to 1), over any commutative ring:
// the product is the determinant of multiplication by f′ on R[x]/(f).
template <class Ring>
typename Ring::Elem discriminant_of_monic(const Ring& R, const std::vector<typename Ring::Elem>& f) {
  using E = typename Ring::Elem;
  require(f.size() >= 3, "discriminant requires degree at least 2");
  const std::size_t n = f.size() - 1;
  std::vector<E> col(n, R.zero());  // f′ reduced, then multiplied by x successively
  for (std::size_t i = 1; i <= n; ++i) {
    E c = R.zero();
    for (std::size_t k = 0; k < i; ++k) c = R.add(c, f[i]);
    if (i - 1 < n) col[i - 1] = c;
  }
  // deg f′ = n − 1 < n, so col already represents f′ mod f.
  Matrix<E> M(n, n, R.zero());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
    // col ← x·col mod f
    E top = col[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) col[i] = R.sub(col[i - 1], R.mul(top, f[i]));
    col[0] = R.neg(R.mul(top, f[0]));
  }
  E det = determinant(R, M);
  if ((n * (n - 1) / 2) % 2 == 1) det = R.neg(det);
  return det;
}

}  // namespace selmerlab::algebra
