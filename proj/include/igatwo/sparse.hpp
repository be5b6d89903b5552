#ifndef IGATWO_SPARSE_HPP
#define IGATWO_SPARSE_HPP

#include "igatwo/common.hpp"

#include <string>

namespace igatwo {

/// Kronecker product with the lexicographic (x fastest) 2D numbering:
/// row iy * X.rows() + ix, column jy * X.cols() + jx, value Y(iy,jy) X(ix,jx).
SparseOperator kron(const SparseOperator& Y, const SparseOperator& X);

/// Dense to sparse, keeping entries with |a_ij| > drop.
SparseOperator to_sparse(const Matrix& A, double drop = 0.0);

SparseOperator identity_operator(Index n);

/// Row sums of A.
Vector row_sums(const SparseOperator& A);

/// max_ij |a_ij - a_ji|.
double max_asymmetry(const SparseOperator& A);

/// max_ij |a_ij - b_ij|.
double max_abs_difference(const SparseOperator& A, const SparseOperator& B);

/// Euclidean norm of b - A x.
double residual_norm(const SparseOperator& A, const Vector& x, const Vector& b);

/// Matrix Market coordinate (real general) dump.
void write_matrix_market(const std::string& path, const SparseOperator& A);

} // namespace igatwo

#endif // IGATWO_SPARSE_HPP
