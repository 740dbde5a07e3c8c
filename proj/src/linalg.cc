#include "absnorm/linalg.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <utility>

namespace absnorm {

namespace {

void require(bool condition, const char* what) {
  if (!condition) throw DimensionError(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  require(data_.size() == rows * cols, "matrix data length != rows * cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), "matvec: dimension mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix matadd(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matadd: shape mismatch");
  std::vector<double> d(a.data());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += b.data()[k];
  return Matrix(a.rows(), a.cols(), std::move(d));
}

Matrix matsub(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matsub: shape mismatch");
  std::vector<double> d(a.data());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= b.data()[k];
  return Matrix(a.rows(), a.cols(), std::move(d));
}

Matrix scale(const Matrix& a, double factor) {
  std::vector<double> d(a.data());
  for (double& v : d) v *= factor;
  return Matrix(a.rows(), a.cols(), std::move(d));
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix principal_submatrix(const Matrix& a, std::span<const std::size_t> index) {
  require(a.square(), "principal_submatrix: matrix not square");
  Matrix sub(index.size(), index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    require(index[i] < a.rows(), "principal_submatrix: index out of range");
    for (std::size_t j = 0; j < index.size(); ++j) sub(i, j) = a(index[i], index[j]);
  }
  return sub;
}

Vector vecadd(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "vecadd: length mismatch");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vector vecsub(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "vecsub: length mismatch");
  Vector r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vector vecscale(std::span<const double> a, double factor) {
  Vector r(a.begin(), a.end());
  for (double& v : r) v *= factor;
  return r;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double norm_inf(const Matrix& a) { return norm_inf(a.data()); }

bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

LuFactorization lu_factor(const Matrix& a) {
  require(a.square(), "lu_factor: matrix not square");
  LuFactorization f;
  const std::size_t n = a.rows();
  f.n_ = n;
  f.lu_ = a.data();
  f.perm_.resize(n);
  f.row_scale_.assign(n, 1.0);
  f.min_pivot_ = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    f.perm_[i] = i;
    const double m = norm_inf(a.row(i));
    if (m == 0.0) {
      f.singular_ = true;
      continue;
    }
    f.row_scale_[i] = m;
    for (std::size_t j = 0; j < n; ++j) f.lu_[i * n + j] /= m;
  }

  auto at = [&](std::size_t i, std::size_t j) -> double& { return f.lu_[i * n + j]; };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      std::swap(f.perm_[k], f.perm_[p]);
      f.sign_ = -f.sign_;
    }
    const double pivot = at(k, k);
    f.min_pivot_ = std::min(f.min_pivot_, std::abs(pivot));
    if (std::abs(pivot) <= kPivotTolerance) f.singular_ = true;
    if (pivot == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = at(i, k) / pivot;
      at(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= factor * at(k, j);
    }
  }
  return f;
}

double LuFactorization::determinant() const {
  double d = sign_;
  for (std::size_t k = 0; k < n_; ++k) d *= lu_[k * n_ + k] * row_scale_[k];
  return d;
}

Vector LuFactorization::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw DimensionError("solve: rhs length mismatch");
  if (singular_) throw SingularError("solve: matrix is singular");
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t src = perm_[i];
    double v = rhs[src] / row_scale_[src];
    for (std::size_t j = 0; j < i; ++j) v -= lu_[i * n_ + j] * x[j];
    x[i] = v;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double v = x[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) v -= lu_[ii * n_ + j] * x[j];
    x[ii] = v / lu_[ii * n_ + ii];
  }
  return x;
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
  if (rhs.rows() != n_) throw DimensionError("solve: rhs rows mismatch");
  Matrix x(n_, rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    const Vector col = solve(rhs.column(j));
    for (std::size_t i = 0; i < n_; ++i) x(i, j) = col[i];
  }
  return x;
}

double det(const Matrix& a) { return lu_factor(a).determinant(); }

bool is_strictly_lower(const Matrix& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (a(i, j) != 0.0) return false;
  return true;
}

namespace {

void require_strict_lower(const Matrix& l) {
  if (!l.square()) throw DimensionError("unit_lower_solve: L not square");
  if (!is_strictly_lower(l))
    throw StructureError("unit_lower_solve: L has a nonzero on or above the diagonal");
}

}  // namespace

Vector unit_lower_solve(const Matrix& strict_lower, std::span<const double> rhs) {
  require_strict_lower(strict_lower);
  require(rhs.size() == strict_lower.rows(), "unit_lower_solve: rhs length mismatch");
  Vector x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] += strict_lower(i, j) * x[j];
  return x;
}

Matrix unit_lower_solve(const Matrix& strict_lower, const Matrix& rhs) {
  require_strict_lower(strict_lower);
  require(rhs.rows() == strict_lower.rows(), "unit_lower_solve: rhs rows mismatch");
  Matrix x = rhs;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double lij = strict_lower(i, j);
      if (lij == 0.0) continue;
      for (std::size_t k = 0; k < x.cols(); ++k) x(i, k) += lij * x(j, k);
    }
  return x;
}

std::string to_string(std::span<const double> v) {
  std::ostringstream os;
  os << std::setprecision(17) << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

std::string to_string(const Matrix& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) os << (i ? ", " : "") << to_string(a.row(i));
  os << ']';
  return os.str();
}

}  // namespace absnorm
