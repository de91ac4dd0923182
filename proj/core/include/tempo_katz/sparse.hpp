#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace tempo_katz {

/// Real sparse matrix in compressed row storage. Every matrix handed out by
/// this library is pruned: no explicitly stored zeros.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using Triplet = Eigen::Triplet<double, int>;

SparseMatrix make_sparse(int rows, int cols, const std::vector<Triplet>& entries);

/// Drops explicit zeros and compresses in place.
void prune(SparseMatrix& m);

/// Entrywise (Schur) product.
SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b);

/// y = m * x with fixed left-to-right accumulation per row.
Vector multiply(const SparseMatrix& m, const Vector& x);

/// Stacks blocks vertically; all blocks must share the column count.
SparseMatrix vstack(const std::vector<SparseMatrix>& blocks, int cols);

/// Coordinate text dump: "nrows ncols nnz" then "row col value" per nonzero,
/// 0-based, row-major order.
void write_coordinate(std::ostream& out, const SparseMatrix& m);

/// Shortest text that distinguishes the double: 17 significant digits.
std::string format_real(double value);

}  // namespace tempo_katz
