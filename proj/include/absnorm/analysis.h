#pragma once

// Matrix-class tests and the end-to-end root, minimization and existence
// pipelines built on formulations.h and solvers.h.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "absnorm/anf.h"
#include "absnorm/formulations.h"
#include "absnorm/solvers.h"

namespace absnorm {

/// A requested formulation cannot be built for this form (singular J,
/// singular I - S, wrong shape).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kPMatrixLimit = 20;

/// Every nonempty principal minor > 1e-12.  Throws DimensionError for
/// non-square input and std::invalid_argument above kPMatrixLimit.
bool is_p_matrix(const Matrix& m);

/// Cholesky of the symmetric part with pivots > 1e-12.  Positive definite
/// implies P, which implies Q; the converse does not hold.
bool is_positive_definite_sufficient(const Matrix& m);

enum class RootStrategy { kAuto, kMlcp, kLcp, kLegacyMlcp, kLegacyLcp };
std::optional<RootStrategy> parse_root_strategy(std::string_view name);
std::string_view to_string(RootStrategy strategy);

enum class MinimizeMethod { kLpcc, kMilp };
std::optional<MinimizeMethod> parse_minimize_method(std::string_view name);

enum class Existence { kExists, kNotExists, kIndeterminate };
std::string_view to_string(Existence e);

struct PipelineOptions {
  EnumerationOptions enumeration;
  std::size_t lemke_max_pivots = 0;  // 0: solver default
  double root_tol = 1e-6;
  double objective_tol = 1e-7;
  double mu = kDefaultBigM;
  MilpOptions milp;
};

struct PipelineReport {
  std::string formulation;
  std::string solver;
  std::map<std::string, bool> nonsingular;  // keys: J, J_aux, I-S
  SolveOutcome outcome;
  std::map<std::string, double> residuals;
  bool verified = false;
  double wall_time_s = 0.0;
  std::optional<Existence> existence;
  std::string existence_certificate;
};

/// auto: LCP (Lemke, enumeration fallback) when m = n and J_aux is
/// nonsingular, otherwise MLCP enumeration.  Legacy and lcp strategies throw
/// PreconditionError when their requirements fail.
PipelineReport root_pipeline(const AbsNormalForm& form,
                             RootStrategy strategy = RootStrategy::kAuto,
                             const PipelineOptions& options = {});

struct ExistenceReport {
  Existence verdict = Existence::kIndeterminate;
  SolveOutcome outcome;  // of the existence MLCP; Solved holds a descent direction
  double wall_time_s = 0.0;
};

/// Requires m = 1.  Exists iff the existence MLCP of the horizon form has no
/// solution; enumeration limits yield kIndeterminate, never a guess.
ExistenceReport existence_of_minimum(const AbsNormalForm& form,
                                     const EnumerationOptions& options = {});

/// Requires m = 1.  When check_existence is set and no minimum exists the
/// outcome is Unbounded with the descent direction in x and no optimization
/// is attempted.
PipelineReport minimize_pipeline(const AbsNormalForm& form,
                                 MinimizeMethod method = MinimizeMethod::kMilp,
                                 bool check_existence = true,
                                 const PipelineOptions& options = {});

}  // namespace absnorm
