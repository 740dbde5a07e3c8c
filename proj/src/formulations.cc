#include "absnorm/formulations.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace absnorm {

namespace {

void require(bool condition, const char* what) {
  if (!condition) throw DimensionError(what);
}

void require_square_map(const AbsNormalForm& form, const char* who) {
  if (form.m() != form.n())
    throw ShapeError(std::string(who) + " requires m = n");
}

void require_scalar(const AbsNormalForm& form, const char* who) {
  if (form.m() != 1) throw ShapeError(std::string(who) + " requires m = 1");
}

}  // namespace

void MlcpProblem::validate() const {
  const std::size_t s = comp_const.size();
  const std::size_t r = eq_const.size();
  require(comp_x.rows() == s && comp_w.rows() == s && comp_w.cols() == s,
          "MLCP complementarity block shape");
  require(eq_x.rows() == r && eq_w.rows() == r, "MLCP equality block rows");
  require(eq_x.cols() == comp_x.cols(), "MLCP x-block width");
  require(eq_w.cols() == s, "MLCP w-block width");
}

Vector MlcpProblem::equality_residual(std::span<const double> x,
                                      std::span<const double> w) const {
  return vecadd(vecadd(eq_const, matvec(eq_x, x)), matvec(eq_w, w));
}

Vector MlcpProblem::complement(std::span<const double> x,
                               std::span<const double> w) const {
  return vecadd(vecadd(comp_const, matvec(comp_x, x)), matvec(comp_w, w));
}

void LpccProblem::validate() const {
  const std::size_t s = comp_const.size();
  require(obj_w.size() == s, "LPCC objective w length");
  require(comp_x.rows() == s && comp_x.cols() == obj_x.size(), "LPCC comp_x shape");
  require(comp_w.rows() == s && comp_w.cols() == s, "LPCC comp_w shape");
}

double LpccProblem::objective(std::span<const double> x,
                              std::span<const double> w) const {
  return obj_const + dot(obj_x, x) + dot(obj_w, w);
}

Vector LpccProblem::complement(std::span<const double> x,
                               std::span<const double> w) const {
  return vecadd(vecadd(comp_const, matvec(comp_x, x)), matvec(comp_w, w));
}

Vector RootLcp::recover(std::span<const double> w) const {
  const Vector rhs = vecscale(vecadd(b, matvec(Y, w)), -1.0);
  return lu_factor(J).solve(rhs);
}

Vector LegacyRootMlcp::recover(std::span<const double> u,
                               std::span<const double> w) const {
  const Vector abs_z = vecadd(u, w);
  const Vector rhs = vecscale(vecadd(form.b(), matvec(form.Y(), abs_z)), -1.0);
  return lu_factor(form.J()).solve(rhs);
}

Vector LegacyRootLcp::recover(std::span<const double> w) const {
  const Vector u = vecadd(lcp.q, matvec(lcp.M, w));
  return mlcp.recover(u, w);
}

MlcpProblem build_root_mlcp(const AuxiliaryQuantities& aux) {
  return MlcpProblem{aux.b, aux.J, aux.Y, aux.c, aux.Z, aux.L};
}

MlcpProblem build_root_mlcp(const AbsNormalForm& form) {
  return build_root_mlcp(auxiliary(form));
}

std::optional<RootLcp> build_root_lcp(const AbsNormalForm& form,
                                      const AuxiliaryQuantities& aux) {
  require_square_map(form, "build_root_lcp");
  auto red = reduced(form, aux);
  if (!red) return std::nullopt;
  return RootLcp{LcpProblem{red->S, red->c}, aux.J, aux.b, aux.Y};
}

std::optional<RootLcp> build_root_lcp(const AbsNormalForm& form) {
  require_square_map(form, "build_root_lcp");
  return build_root_lcp(form, auxiliary(form));
}

std::optional<LegacyRootMlcp> build_root_mlcp_legacy(const AbsNormalForm& form) {
  require_square_map(form, "build_root_mlcp_legacy");
  const LuFactorization jf = lu_factor(form.J());
  if (jf.singular()) return std::nullopt;
  const std::size_t s = form.s();
  const Matrix S = matsub(form.L(), matmul(form.Z(), jf.solve(form.Y())));
  const Vector c_hat = vecsub(form.c(), matvec(form.Z(), jf.solve(form.b())));
  const Matrix I = Matrix::identity(s);
  MlcpProblem mlcp{vecscale(c_hat, -1.0), matsub(I, S), scale(matadd(I, S), -1.0),
                   Vector(s, 0.0),        I,            Matrix(s, s)};
  return LegacyRootMlcp{std::move(mlcp), S, c_hat, form};
}

std::optional<LegacyRootLcp> build_root_lcp_legacy(const AbsNormalForm& form) {
  auto legacy = build_root_mlcp_legacy(form);
  if (!legacy) return std::nullopt;
  const Matrix I = Matrix::identity(form.s());
  const LuFactorization f = lu_factor(matsub(I, legacy->S));
  if (f.singular()) return std::nullopt;
  LcpProblem lcp{f.solve(matadd(I, legacy->S)), f.solve(legacy->c_hat)};
  return LegacyRootLcp{std::move(lcp), std::move(*legacy)};
}

LpccProblem build_min_lpcc(const AbsNormalForm& form, const AuxiliaryQuantities& aux) {
  require_scalar(form, "build_min_lpcc");
  const Vector obj_x(aux.J.row(0).begin(), aux.J.row(0).end());
  const Vector obj_w(aux.Y.row(0).begin(), aux.Y.row(0).end());
  return LpccProblem{aux.b[0], obj_x, obj_w, aux.c, aux.Z, aux.L};
}

LpccProblem build_min_lpcc(const AbsNormalForm& form) {
  require_scalar(form, "build_min_lpcc");
  return build_min_lpcc(form, auxiliary(form));
}

MilpProblem build_min_milp(const LpccProblem& lpcc, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("build_min_milp: mu must be positive and finite");
  return MilpProblem{lpcc, mu};
}

MlcpProblem build_existence_mlcp(const AbsNormalForm& form) {
  require_scalar(form, "build_existence_mlcp");
  const AuxiliaryQuantities aux = auxiliary(horizon(form));
  return MlcpProblem{Vector{1.0}, aux.J, aux.Y, Vector(form.s(), 0.0), aux.Z, aux.L};
}

std::optional<MlcpProblem> build_simply_switched_mlcp(const AbsNormalForm& form) {
  require_square_map(form, "build_simply_switched_mlcp");
  if (!is_simply_switched(form)) return std::nullopt;
  const std::size_t s = form.s();
  return MlcpProblem{vecadd(form.b(), matvec(form.Y(), form.c())),
                     matadd(form.J(), matmul(form.Y(), form.Z())),
                     scale(form.Y(), 2.0),
                     form.c(),
                     form.Z(),
                     Matrix::identity(s)};
}

}  // namespace absnorm
