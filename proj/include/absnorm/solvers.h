#pragma once

// Complete desk-scale solvers for the problems produced by formulations.h.
//
// Lemke pivoting may stop on a secondary ray; that outcome is reported as
// such and never read as "no solution".  The enumeration solvers visit every
// complementarity pattern and are the only source of NoSolutionProved.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absnorm/anf.h"
#include "absnorm/formulations.h"
#include "absnorm/linalg.h"

namespace absnorm {

enum class SolveStatus {
  kSolved,
  kNoSolutionProved,
  kRayTermination,
  kInfeasible,
  kUnbounded,
  kLimitReached,
};

std::string_view to_string(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kLimitReached;
  std::optional<Vector> x;
  std::optional<Vector> w;
  std::optional<std::vector<int>> y;
  std::optional<double> objective;
  std::optional<Vector> ray;  // unbounded LP direction
  std::string certificate;
  std::size_t iterations = 0;  // pivots, patterns or nodes, per solver

  bool solved() const { return status == SolveStatus::kSolved; }
};

/// Residual tolerances shared by the complementarity solvers and checkers.
struct Tolerances {
  double nonnegativity = 1e-9;
  double complementarity = 1e-8;
  double equality = 1e-8;
};

inline constexpr std::size_t kDefaultEnumerationLimit = 20;

/// Reads ABSNORM_ENUM_LIMIT, falling back to kDefaultEnumerationLimit when
/// unset or unparsable.
std::size_t enumeration_limit_from_env();

struct EnumerationOptions {
  std::size_t limit = kDefaultEnumerationLimit;
  Tolerances tol;
};

// ---------------------------------------------------------------------------
// Linear programming

/// min objective . x + objective_const
/// s.t. eq_matrix x = eq_rhs, ge_matrix x >= ge_rhs, lower <= x <= upper.
/// Bounds may be infinite; empty bound vectors mean x >= 0.
struct LpProblem {
  Vector objective;
  double objective_const = 0.0;
  Matrix eq_matrix;
  Vector eq_rhs;
  Matrix ge_matrix;
  Vector ge_rhs;
  Vector lower;
  Vector upper;

  std::size_t num_vars() const { return objective.size(); }
  void validate() const;
};

struct LpOptions {
  std::size_t max_iterations = 100000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  /// Consecutive degenerate pivots under Dantzig pricing before switching
  /// to Bland's rule for the rest of the phase.
  std::size_t degenerate_switch = 50;
};

/// Two-phase dense tableau simplex.  Solved carries x and objective;
/// Unbounded carries the improving ray; Infeasible carries nothing.
SolveOutcome solve_lp(const LpProblem& lp, const LpOptions& options = {});

// ---------------------------------------------------------------------------
// Complementarity

/// Lemke's method with covering vector e.  w = 0 is returned immediately
/// when q >= 0.
SolveOutcome solve_lcp_lemke(const LcpProblem& lcp, std::size_t max_pivots = 0,
                             const Tolerances& tol = {});

/// Complete enumeration of the 2^s patterns alpha (bit i set: w_i may be
/// positive and (q + M w)_i = 0).  Patterns are visited in increasing bitmask
/// order, so the returned solution is the first feasible one in that order.
SolveOutcome solve_lcp_enumerate(const LcpProblem& lcp,
                                 const EnumerationOptions& options = {});

/// Same pattern scheme for an MLCP; each pattern is a linear feasibility
/// problem in (x, w_alpha).
SolveOutcome solve_mlcp_enumerate(const MlcpProblem& mlcp,
                                  const EnumerationOptions& options = {});

/// Minimum over the branch LPs of all 2^s patterns.  Infeasible when no
/// branch is feasible; Unbounded as soon as a feasible branch is unbounded.
SolveOutcome solve_lpcc_enumerate(const LpccProblem& lpcc,
                                  const EnumerationOptions& options = {});

struct MilpOptions {
  std::size_t node_limit = 100000;
  double relative_gap = 1e-9;
  double integrality_tol = 1e-6;
  LpOptions lp;
};

/// Best-first branch and bound on y with [0, 1] relaxations.  LimitReached
/// keeps the incumbent, if any.
SolveOutcome solve_milp_bb(const MilpProblem& milp, const MilpOptions& options = {});

/// Lowers a MilpProblem to its LP relaxation over (x, w, y).
LpProblem milp_relaxation(const MilpProblem& milp);

// ---------------------------------------------------------------------------
// Checks

bool verify_complementarity(const MlcpProblem& mlcp, std::span<const double> x,
                            std::span<const double> w, double tol);
bool verify_complementarity(const LcpProblem& lcp, std::span<const double> w,
                            double tol);
/// Feasibility of (x, w) for the LPCC constraints.
bool verify_complementarity(const LpccProblem& lpcc, std::span<const double> x,
                            std::span<const double> w, double tol);

bool verify_root(const AbsNormalForm& form, std::span<const double> x, double tol);

}  // namespace absnorm
