#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qpg {

using Complex = std::complex<double>;

/// Raised when operand shapes do not compose.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input object is malformed or an operation's structural
/// precondition fails (as opposed to a relation simply not holding).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double eps = 1e-10;

  Tolerance() = default;
  explicit Tolerance(double e) : eps(e) {
    if (!(e >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  }
};

/// Dense row-major complex matrix. Immutable once built; all entries finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diag(std::initializer_list<Complex> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise max |a_rc|.
double max_norm(const ComplexMatrix& a);
/// ‖a − b‖_max; shapes must agree.
double max_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest singular value.
double operator_norm(const ComplexMatrix& a);
std::vector<double> singular_values(const ComplexMatrix& a);

bool is_projection(const ComplexMatrix& a, Tolerance tol = {});

/// Numerical rank of the span of equal-length vectors. Singular values below
/// eps·σ_max count as zero.
std::size_t span_rank(std::span<const std::vector<Complex>> vectors, Tolerance tol = {});
/// Same, with each matrix flattened row-major.
std::size_t span_rank(std::span<const ComplexMatrix> matrices, Tolerance tol = {});
/// Numerical rank of a matrix (rank of its column span).
std::size_t matrix_rank(const ComplexMatrix& a, Tolerance tol = {});
/// cols − rank, with the same thresholding as matrix_rank.
std::size_t nullspace_dim(const ComplexMatrix& op, Tolerance tol = {});

std::vector<Complex> flatten(const ComplexMatrix& a);
std::vector<std::vector<Complex>> columns(const ComplexMatrix& a);

nlohmann::json to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qpg
