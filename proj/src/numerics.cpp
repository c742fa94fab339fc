#include "qpg/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qpg/json_util.hpp"

namespace qpg {

namespace {

void check_finite(std::span<const Complex> v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("matrix entries must be finite");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": shape mismatch");
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  return m;
}

std::vector<double> svd_values(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::size_t thresholded_rank(const std::vector<double>& sv, double eps) {
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = eps * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  if (data_.size() != rows * cols) throw DimensionError("entry count does not match rows*cols");
  check_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  check_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(std::initializer_list<Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const auto& z : d) {
    m.data_[i * d.size() + i] = z;
    ++i;
  }
  check_finite(m.data_);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.data_[c * rows_ + r] = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.data_[c * rows_ + r] = (*this)(r, c);
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  ComplexMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  ComplexMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("operator*: inner dimensions differ");
  ComplexMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex x = a(r, k);
      if (x == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) m.data_[r * b.cols_ + c] += x * b(k, c);
    }
  return m;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw std::invalid_argument("scalar must be finite");
  ComplexMatrix m = a;
  for (auto& z : m.data_) z *= s;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> out(rows * cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out[(ar * b.rows() + br) * cols + ac * b.cols() + bc] = x * b(br, bc);
    }
  return {rows, cols, std::move(out)};
}

double max_norm(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

std::vector<double> singular_values(const ComplexMatrix& a) { return svd_values(to_eigen(a)); }

double operator_norm(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

bool is_projection(const ComplexMatrix& a, Tolerance tol) {
  if (!a.square()) throw DimensionError("is_projection: matrix must be square");
  return max_diff(a, a.adjoint()) <= tol.eps && max_diff(a * a, a) <= tol.eps;
}

std::size_t span_rank(std::span<const std::vector<Complex>> vectors, Tolerance tol) {
  if (vectors.empty()) return 0;
  const std::size_t len = vectors.front().size();
  Eigen::MatrixXcd m(len, vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].size() != len) throw DimensionError("span_rank: vectors differ in length");
    for (std::size_t r = 0; r < len; ++r) m(r, c) = vectors[c][r];
  }
  return thresholded_rank(svd_values(m), tol.eps);
}

std::size_t span_rank(std::span<const ComplexMatrix> matrices, Tolerance tol) {
  std::vector<std::vector<Complex>> vs;
  vs.reserve(matrices.size());
  for (const auto& m : matrices) vs.push_back(flatten(m));
  return span_rank(std::span<const std::vector<Complex>>(vs), tol);
}

std::size_t matrix_rank(const ComplexMatrix& a, Tolerance tol) {
  return thresholded_rank(singular_values(a), tol.eps);
}

std::size_t nullspace_dim(const ComplexMatrix& op, Tolerance tol) {
  return op.cols() - matrix_rank(op, tol);
}

std::vector<Complex> flatten(const ComplexMatrix& a) { return {a.data().begin(), a.data().end()}; }

std::vector<std::vector<Complex>> columns(const ComplexMatrix& a) {
  std::vector<std::vector<Complex>> out(a.cols(), std::vector<Complex>(a.rows()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[c][r] = a(r, c);
  return out;
}

nlohmann::json to_json(const ComplexMatrix& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& z : a.data()) entries.push_back({z.real(), z.imag()});
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = detail::read_count(j, "rows", 1u << 12);
    const auto cols = detail::read_count(j, "cols", 1u << 12);
    const auto& entries = j.at("entries");
    if (!entries.is_array()) throw StructuralError("matrix entries must be an array");
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) throw StructuralError("matrix entry must be [re, im]");
      if (!e[0].is_number() || !e[1].is_number()) throw StructuralError("matrix entry must be numeric");
      data.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return {rows, cols, std::move(data)};
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("bad matrix JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw StructuralError(std::string("bad matrix JSON: ") + e.what());
  }
}

}  // namespace qpg
