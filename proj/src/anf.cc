#include "absnorm/anf.h"

#include <cmath>
#include <random>
#include <utility>

namespace absnorm {

AbsNormalForm::AbsNormalForm(Vector c, Vector b, Matrix Z, Matrix L, Matrix J,
                             Matrix Y)
    : n_(Z.cols()),
      c_(std::move(c)),
      b_(std::move(b)),
      Z_(std::move(Z)),
      L_(std::move(L)),
      J_(std::move(J)),
      Y_(std::move(Y)) {
  const std::size_t s = c_.size();
  const std::size_t m = b_.size();
  if (Z_.rows() != s) throw DimensionError("Z must have s rows");
  if (L_.rows() != s || L_.cols() != s) throw DimensionError("L must be s x s");
  if (J_.rows() != m || J_.cols() != n_) throw DimensionError("J must be m x n");
  if (Y_.rows() != m || Y_.cols() != s) throw DimensionError("Y must be m x s");
  if (!all_finite(c_) || !all_finite(b_) || !all_finite(Z_.data()) ||
      !all_finite(L_.data()) || !all_finite(J_.data()) || !all_finite(Y_.data()))
    throw DimensionError("abs-normal form entries must be finite");
  if (!is_strictly_lower(L_))
    throw StructureError("L must be strictly lower triangular");
}

SignDecomposition sign_decomposition(std::span<const double> z) {
  SignDecomposition d{Vector(z.begin(), z.end()), Vector(z.size()), Vector(z.size())};
  for (std::size_t i = 0; i < z.size(); ++i) {
    d.u[i] = std::max(0.0, z[i]);
    d.w[i] = std::max(0.0, -z[i]);
  }
  return d;
}

Vector switching_vector(const AbsNormalForm& form, std::span<const double> x) {
  if (x.size() != form.n()) throw DimensionError("switching_vector: |x| != n");
  const Matrix& L = form.L();
  Vector z = vecadd(form.c(), matvec(form.Z(), x));
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) z[i] += L(i, j) * std::abs(z[j]);
  return z;
}

Vector evaluate(const AbsNormalForm& form, std::span<const double> x) {
  Vector abs_z = switching_vector(form, x);
  for (double& v : abs_z) v = std::abs(v);
  Vector f = vecadd(form.b(), matvec(form.J(), x));
  return vecadd(f, matvec(form.Y(), abs_z));
}

AuxiliaryQuantities auxiliary(const AbsNormalForm& form) {
  const std::size_t s = form.s();
  AuxiliaryQuantities aux;
  aux.c = unit_lower_solve(form.L(), form.c());
  aux.L = unit_lower_solve(form.L(), matadd(Matrix::identity(s), form.L()));
  aux.Z = unit_lower_solve(form.L(), form.Z());
  aux.b = vecadd(form.b(), matvec(form.Y(), aux.c));
  aux.Y = matmul(form.Y(), matadd(Matrix::identity(s), aux.L));
  aux.J = matadd(form.J(), matmul(form.Y(), aux.Z));
  return aux;
}

std::optional<ReducedData> reduced(const AbsNormalForm& form,
                                   const AuxiliaryQuantities& aux) {
  if (form.m() != form.n()) throw ShapeError("reduced data requires m = n");
  const LuFactorization jf = lu_factor(aux.J);
  if (jf.singular()) return std::nullopt;
  const Vector jb = jf.solve(aux.b);
  const Matrix jy = jf.solve(aux.Y);
  return ReducedData{vecsub(aux.c, matvec(aux.Z, jb)), matsub(aux.L, matmul(aux.Z, jy))};
}

AbsNormalForm horizon(const AbsNormalForm& form) {
  return AbsNormalForm(Vector(form.s(), 0.0), Vector(form.m(), 0.0), form.Z(),
                       form.L(), form.J(), form.Y());
}

bool is_simply_switched(const AbsNormalForm& form) {
  for (double v : form.L().data())
    if (v != 0.0) return false;
  return true;
}

AbsNormalForm random_instance(std::size_t n, std::uint64_t seed,
                              InstancePreset /*preset*/) {
  if (n < 1) throw std::invalid_argument("random_instance: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] { return std::round(normal(rng)) + 0.0; };

  Vector c(n), b(n);
  for (double& v : c) v = draw();
  for (double& v : b) v = draw();
  Matrix Y(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Y(i, j) = draw();
  Matrix L(n, n);
  for (std::size_t i = 1; i < n; ++i) L(i, i - 1) = 1.0;
  return AbsNormalForm(std::move(c), std::move(b), Matrix(n, n), std::move(L),
                       Matrix::identity(n), std::move(Y));
}

AbsNormalForm nested_abs_instance(std::size_t n) {
  if (n < 1) throw std::invalid_argument("nested_abs_instance: n must be >= 1");
  Matrix L(n, n);
  for (std::size_t i = 1; i < n; ++i) L(i, i - 1) = 1.0;
  Matrix Y(1, n);
  Y(0, n - 1) = 1.0;
  return AbsNormalForm(Vector(n, 0.0), Vector{1.0}, scale(Matrix::identity(n), 1000.0),
                       std::move(L), Matrix(1, n), std::move(Y));
}

}  // namespace absnorm
