#include "almhd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace almhd {

SparseMatrix::SparseMatrix(int n_rows, int n_cols, std::vector<int> row_offsets,
                           std::vector<int> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (static_cast<int>(row_offsets_.size()) != n_rows_ + 1)
    throw std::invalid_argument("SparseMatrix: row offset array has wrong length");
  if (col_indices_.size() != values_.size())
    throw std::invalid_argument("SparseMatrix: index/value length mismatch");
  for (int i = 0; i < n_rows_; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1])
      throw std::invalid_argument("SparseMatrix: row offsets not monotone");
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] < 0 || col_indices_[k] >= n_cols_)
        throw std::invalid_argument("SparseMatrix: column index out of range");
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1])
        throw std::invalid_argument("SparseMatrix: column indices not sorted/unique");
    }
  }
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<int> offsets(n + 1), cols(n);
  std::vector<double> vals(n, 1.0);
  for (int i = 0; i <= n; ++i) offsets[i] = i;
  for (int i = 0; i < n; ++i) cols[i] = i;
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

void SparseMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_cols_)
    throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
  y.assign(n_rows_, 0.0);
  for (int i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      s += values_[k] * x[col_indices_[k]];
    y[i] = s;
  }
}

std::vector<double> SparseMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y;
  apply(x, y);
  return y;
}

void SparseMatrix::apply_transpose(const std::vector<double>& x, std::vector<double>& y) const {
  if (static_cast<int>(x.size()) != n_rows_)
    throw std::invalid_argument("SparseMatrix::apply_transpose: dimension mismatch");
  y.assign(n_cols_, 0.0);
  for (int i = 0; i < n_rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      y[col_indices_[k]] += values_[k] * xi;
  }
}

std::vector<double> SparseMatrix::apply_transpose(const std::vector<double>& x) const {
  std::vector<double> y;
  apply_transpose(x, y);
  return y;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<int> offsets(n_cols_ + 1, 0);
  for (int k = 0; k < static_cast<int>(col_indices_.size()); ++k)
    offsets[col_indices_[k] + 1]++;
  for (int j = 0; j < n_cols_; ++j) offsets[j + 1] += offsets[j];
  std::vector<int> cols(values_.size());
  std::vector<double> vals(values_.size());
  std::vector<int> next(offsets.begin(), offsets.end() - 1);
  for (int i = 0; i < n_rows_; ++i) {
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const int pos = next[col_indices_[k]]++;
      cols[pos] = i;
      vals[pos] = values_[k];
    }
  }
  return SparseMatrix(n_cols_, n_rows_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix SparseMatrix::axpy(double alpha, const SparseMatrix& other) const {
  if (other.n_rows_ != n_rows_ || other.n_cols_ != n_cols_)
    throw std::invalid_argument("SparseMatrix::axpy: dimension mismatch");
  TripletBuffer buf(n_rows_, n_cols_);
  buf.reserve(values_.size() + other.values_.size());
  for (int i = 0; i < n_rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      buf.add(i, col_indices_[k], values_[k]);
  for (int i = 0; i < n_rows_; ++i)
    for (int k = other.row_offsets_[i]; k < other.row_offsets_[i + 1]; ++k)
      buf.add(i, other.col_indices_[k], alpha * other.values_[k]);
  return buf.compress();
}

void SparseMatrix::scale(double alpha) {
  for (double& v : values_) v *= alpha;
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(n_rows_, 0.0);
  for (int i = 0; i < n_rows_; ++i)
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
      if (col_indices_[k] == i) d[i] = values_[k];
  return d;
}

double SparseMatrix::coeff(int i, int j) const {
  for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
    if (col_indices_[k] == j) return values_[k];
  return 0.0;
}

double SparseMatrix::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < n_rows_; ++i) {
    double s = 0.0;
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) s += std::abs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

SparseMatrix TripletBuffer::compress() const {
  std::vector<int> perm(entries_.size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  std::sort(perm.begin(), perm.end(), [this](int a, int b) {
    if (entries_[a].row != entries_[b].row) return entries_[a].row < entries_[b].row;
    return entries_[a].col < entries_[b].col;
  });

  std::vector<int> offsets(n_rows_ + 1, 0);
  std::vector<int> cols;
  std::vector<double> vals;
  cols.reserve(entries_.size());
  vals.reserve(entries_.size());

  int last_row = -1, last_col = -1;
  for (int p : perm) {
    const Entry& e = entries_[p];
    if (e.row < 0 || e.row >= n_rows_ || e.col < 0 || e.col >= n_cols_)
      throw std::out_of_range("TripletBuffer: entry outside matrix");
    if (e.row == last_row && e.col == last_col) {
      vals.back() += e.value;
    } else {
      cols.push_back(e.col);
      vals.push_back(e.value);
      offsets[e.row + 1]++;
      last_row = e.row;
      last_col = e.col;
    }
  }
  for (int i = 0; i < n_rows_; ++i) offsets[i + 1] += offsets[i];
  return SparseMatrix(n_rows_, n_cols_, std::move(offsets), std::move(cols), std::move(vals));
}

void write_matrix_market(const SparseMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << " " << A.cols() << " " << A.nnz() << "\n";
  char line[64];
  for (int i = 0; i < A.rows(); ++i) {
    for (int k = A.row_offsets()[i]; k < A.row_offsets()[i + 1]; ++k) {
      std::snprintf(line, sizeof(line), "%d %d %.17g\n", i + 1, A.col_indices()[k] + 1,
                    A.values()[k]);
      out << line;
    }
  }
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty Matrix Market file: " + path);
  std::istringstream banner(line);
  std::string mm, object, format, field, symmetry;
  banner >> mm >> object >> format >> field >> symmetry;
  if (mm != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || field != "real")
    throw std::runtime_error("unsupported Matrix Market header: " + line);
  const bool symmetric = (symmetry == "symmetric");
  if (!symmetric && symmetry != "general")
    throw std::runtime_error("unsupported Matrix Market symmetry: " + symmetry);

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  long rows = 0, cols = 0, nnz = 0;
  dims >> rows >> cols >> nnz;
  if (rows <= 0 || cols <= 0 || nnz < 0)
    throw std::runtime_error("bad Matrix Market size line: " + line);

  TripletBuffer buf(static_cast<int>(rows), static_cast<int>(cols));
  buf.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::runtime_error("truncated Matrix Market file: " + path);
    buf.add(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    if (symmetric && i != j) buf.add(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
  }
  return buf.compress();
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace almhd
