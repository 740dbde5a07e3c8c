#pragma once

// Dense real linear algebra used throughout the library.  Storage is
// row-major and every value type is immutable once handed out by a
// factory or arithmetic routine.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace absnorm {

using Vector = std::vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, std::span<const double> x);
Matrix matadd(const Matrix& a, const Matrix& b);
Matrix matsub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double factor);
Matrix transpose(const Matrix& a);
Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> index);

Vector vecadd(std::span<const double> a, std::span<const double> b);
Vector vecsub(std::span<const double> a, std::span<const double> b);
Vector vecscale(std::span<const double> a, double factor);
double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> a);
double norm_inf(const Matrix& a);
bool all_finite(std::span<const double> a);

/// Absolute threshold on row-scaled pivots below which a matrix is
/// reported singular.
inline constexpr double kPivotTolerance = 1e-10;

/// LU factorization with partial pivoting of a row-equilibrated copy of a
/// square matrix.  Each row is first divided by its largest magnitude, so
/// the pivot tolerance is relative to the row scale of the input.
class LuFactorization {
 public:
  std::size_t size() const { return n_; }
  bool singular() const { return singular_; }
  double determinant() const;

  /// Smallest pivot magnitude seen on the scaled matrix.
  double min_pivot() const { return min_pivot_; }

  Vector solve(std::span<const double> rhs) const;
  Matrix solve(const Matrix& rhs) const;

 private:
  friend LuFactorization lu_factor(const Matrix& a);

  std::size_t n_ = 0;
  std::vector<double> lu_;  // row-major, unit-lower L below diagonal
  std::vector<std::size_t> perm_;
  std::vector<double> row_scale_;
  int sign_ = 1;
  bool singular_ = false;
  double min_pivot_ = 0.0;
};

LuFactorization lu_factor(const Matrix& a);

inline Vector solve(const LuFactorization& fact, std::span<const double> rhs) {
  return fact.solve(rhs);
}
inline Matrix solve(const LuFactorization& fact, const Matrix& rhs) {
  return fact.solve(rhs);
}

double det(const Matrix& a);

/// Solves (I - L) X = rhs for strictly lower triangular L by forward
/// substitution.  Any nonzero on or above the diagonal of L is rejected.
Vector unit_lower_solve(const Matrix& strict_lower, std::span<const double> rhs);
Matrix unit_lower_solve(const Matrix& strict_lower, const Matrix& rhs);

bool is_strictly_lower(const Matrix& a);

std::string to_string(const Matrix& a);
std::string to_string(std::span<const double> v);

}  // namespace absnorm
