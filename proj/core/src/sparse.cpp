#include "tempo_katz/sparse.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace tempo_katz {

SparseMatrix make_sparse(int rows, int cols, const std::vector<Triplet>& entries) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  prune(m);
  return m;
}

void prune(SparseMatrix& m) {
  m.prune(0.0, 0.0);
  m.makeCompressed();
}

SparseMatrix hadamard(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hadamard: shape mismatch");
  }
  SparseMatrix out = a.cwiseProduct(b);
  prune(out);
  return out;
}

Vector multiply(const SparseMatrix& m, const Vector& x) {
  if (m.cols() != x.size()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  Vector y(m.rows());
  for (int row = 0; row < m.outerSize(); ++row) {
    double acc = 0.0;
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      acc += it.value() * x[it.col()];
    }
    y[row] = acc;
  }
  return y;
}

SparseMatrix vstack(const std::vector<SparseMatrix>& blocks, int cols) {
  int rows = 0;
  std::vector<Triplet> entries;
  for (const auto& block : blocks) {
    if (block.cols() != cols) {
      throw std::invalid_argument("vstack: column count mismatch");
    }
    for (int r = 0; r < block.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(block, r); it; ++it) {
        entries.emplace_back(rows + r, it.col(), it.value());
      }
    }
    rows += static_cast<int>(block.rows());
  }
  return make_sparse(rows, cols, entries);
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_coordinate(std::ostream& out, const SparseMatrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      out << r << ' ' << it.col() << ' ' << format_real(it.value()) << '\n';
    }
  }
}

}  // namespace tempo_katz
