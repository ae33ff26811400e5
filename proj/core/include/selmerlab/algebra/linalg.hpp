#pragma once

#include <optional>
#include <vector>

#include "selmerlab/algebra/field.hpp"
#include "selmerlab/algebra/matrix.hpp"

namespace selmerlab::algebra {

using MatN = Matrix<FieldElem>;
using Vec = std::vector<FieldElem>;

MatN zero_matrix(const Field& F, std::size_t rows, std::size_t cols);
MatN identity_matrix(const Field& F, std::size_t n);

std::size_t rank(const Field& F, MatN A);
FieldElem det(const Field& F, MatN A);
std::optional<MatN> inverse(const Field& F, const MatN& A);
FieldElem trace(const Field& F, const MatN& A);

// Solutions of A·x = b as x0 + span(kernel).
struct AffineSolution {
  Vec particular;
  std::vector<Vec> kernel;
};
std::optional<AffineSolution> solve_affine(const Field& F, const MatN& A, const Vec& b);

}  // namespace selmerlab::algebra
