#pragma once

// Constructors that turn an abs-normal form into complementarity and
// optimization problems.  All builders are pure; "absent" results signal an
// unmet nonsingularity requirement so callers can pick a fallback.

#include <optional>

#include "absnorm/anf.h"
#include "absnorm/linalg.h"

namespace absnorm {

/// 0 <= w  _|_  q + M w >= 0.
struct LcpProblem {
  Matrix M;
  Vector q;

  std::size_t size() const { return q.size(); }
};

/// Mixed LCP in a free block x and a complementarity block w:
///
///   0 = eq_const + eq_x x + eq_w w
///   0 <= w  _|_  comp_const + comp_x x + comp_w w >= 0
struct MlcpProblem {
  Vector eq_const;
  Matrix eq_x;
  Matrix eq_w;
  Vector comp_const;
  Matrix comp_x;
  Matrix comp_w;

  std::size_t n_x() const { return comp_x.cols(); }
  std::size_t n_eq() const { return eq_const.size(); }
  std::size_t s() const { return comp_const.size(); }

  /// Throws DimensionError on inconsistent blocks.
  void validate() const;
  Vector equality_residual(std::span<const double> x, std::span<const double> w) const;
  Vector complement(std::span<const double> x, std::span<const double> w) const;
};

/// min obj_const + obj_x . x + obj_w . w  over the complementarity block of
/// an MlcpProblem (no equality rows).
struct LpccProblem {
  double obj_const = 0.0;
  Vector obj_x;
  Vector obj_w;
  Vector comp_const;
  Matrix comp_x;
  Matrix comp_w;

  std::size_t n_x() const { return obj_x.size(); }
  std::size_t s() const { return comp_const.size(); }

  void validate() const;
  double objective(std::span<const double> x, std::span<const double> w) const;
  Vector complement(std::span<const double> x, std::span<const double> w) const;
};

/// Big-M reformulation of an LPCC with binary y:
///   0 <= w <= mu y,   0 <= comp_const + comp_x x + comp_w w <= mu (e - y).
struct MilpProblem {
  LpccProblem lpcc;
  double mu = 1e5;
};

inline constexpr double kDefaultBigM = 1e5;

/// LCP in w together with the data that recovers x from J x = -b - Y w.
struct RootLcp {
  LcpProblem lcp;
  Matrix J;
  Vector b;
  Matrix Y;

  Vector recover(std::span<const double> w) const;
};

/// Legacy system  u - w = c_hat + S (u + w),  0 <= u _|_ w >= 0,  encoded
/// with u as the free block: eq 0 = -c_hat + (I-S) u - (I+S) w, and the
/// complementarity expression comp_x u = u (so u >= 0 is enforced there).
struct LegacyRootMlcp {
  MlcpProblem mlcp;
  Matrix S;
  Vector c_hat;
  AbsNormalForm form;

  /// x = -J^-1 (b + Y (u + w)).
  Vector recover(std::span<const double> u, std::span<const double> w) const;
};

/// Legacy LCP  0 <= (I-S)^-1 c_hat + (I-S)^-1 (I+S) w  _|_  w >= 0.
struct LegacyRootLcp {
  LcpProblem lcp;
  LegacyRootMlcp mlcp;

  /// u = q + M w, then the legacy x recovery.
  Vector recover(std::span<const double> w) const;
};

MlcpProblem build_root_mlcp(const AbsNormalForm& form);
MlcpProblem build_root_mlcp(const AuxiliaryQuantities& aux);

/// Throws ShapeError unless m = n; empty when J_aux is singular.
std::optional<RootLcp> build_root_lcp(const AbsNormalForm& form);
std::optional<RootLcp> build_root_lcp(const AbsNormalForm& form,
                                      const AuxiliaryQuantities& aux);

/// Throws ShapeError unless m = n; empty when J is singular.
std::optional<LegacyRootMlcp> build_root_mlcp_legacy(const AbsNormalForm& form);

/// Throws ShapeError unless m = n; empty when J or I - S is singular.
std::optional<LegacyRootLcp> build_root_lcp_legacy(const AbsNormalForm& form);

/// Throws ShapeError unless m = 1.
LpccProblem build_min_lpcc(const AbsNormalForm& form);
LpccProblem build_min_lpcc(const AbsNormalForm& form, const AuxiliaryQuantities& aux);

/// Throws std::invalid_argument unless mu > 0.
MilpProblem build_min_milp(const LpccProblem& lpcc, double mu = kDefaultBigM);

/// 0 = 1 + J xi + Y omega,  0 <= omega _|_ Z xi + L omega >= 0 (auxiliary
/// quantities of f, which coincide with those of its horizon form).
/// Throws ShapeError unless m = 1.
MlcpProblem build_existence_mlcp(const AbsNormalForm& form);

/// L = 0 special case:  0 = (b + Y c) + (J + Y Z) x + 2 Y w,
/// 0 <= w _|_ c + Z x + w >= 0.  Throws ShapeError unless m = n; empty when
/// L != 0.
std::optional<MlcpProblem> build_simply_switched_mlcp(const AbsNormalForm& form);

}  // namespace absnorm
