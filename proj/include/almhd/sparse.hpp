#pragma once

#include <string>
#include <vector>

namespace almhd {

/// Compressed sparse row matrix. Column indices are sorted and unique
/// within each row; this is the carrier for every assembled block.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(int n_rows, int n_cols, std::vector<int> row_offsets,
               std::vector<int> col_indices, std::vector<double> values);

  static SparseMatrix identity(int n);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  long nnz() const { return static_cast<long>(values_.size()); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// y = A x
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  /// y = A^T x (scatter form; no transposed copy is built)
  void apply_transpose(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> apply_transpose(const std::vector<double>& x) const;

  SparseMatrix transposed() const;

  /// this + alpha * other (patterns may differ)
  SparseMatrix axpy(double alpha, const SparseMatrix& other) const;

  void scale(double alpha);

  std::vector<double> diagonal() const;
  double coeff(int i, int j) const;  // 0 if not stored
  double norm_inf() const;           // max absolute row sum

private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<int> row_offsets_;
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

/// Accumulates COO triplets; duplicates are summed on compress().
class TripletBuffer {
public:
  TripletBuffer(int n_rows, int n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}

  void reserve(std::size_t n) { entries_.reserve(n); }

  void add(int row, int col, double value) {
    entries_.push_back({row, col, value});
  }

  SparseMatrix compress() const;

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }

private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  int n_rows_;
  int n_cols_;
  std::vector<Entry> entries_;
};

// Matrix Market coordinate real general I/O.
void write_matrix_market(const SparseMatrix& A, const std::string& path);
SparseMatrix read_matrix_market(const std::string& path);

// Small vector helpers shared by the Krylov drivers.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);

}  // namespace almhd
