#include "absnorm/analysis.h"

#include <chrono>
#include <cmath>
#include <vector>

namespace absnorm {

namespace {

constexpr double kMinorTolerance = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool nonsingular(const Matrix& a) { return a.square() && !lu_factor(a).singular(); }

// Lemke first; enumeration when Lemke stops without a verified root.
SolveOutcome solve_lcp_with_fallback(const LcpProblem& lcp, const PipelineOptions& opt,
                                     const auto& recover, const AbsNormalForm& form,
                                     std::string& solver) {
  SolveOutcome out = solve_lcp_lemke(lcp, opt.lemke_max_pivots, opt.enumeration.tol);
  solver = "lemke";
  if (out.solved() && verify_root(form, recover(*out.w), opt.root_tol)) return out;
  const std::size_t pivots = out.iterations;
  out = solve_lcp_enumerate(lcp, opt.enumeration);
  out.iterations += pivots;
  solver = "lemke+enumeration";
  return out;
}

std::string legacy_shape_message(const AbsNormalForm& form) {
  return "J singular: legacy formulation needs an invertible J, got " +
         std::to_string(form.m()) + " x " + std::to_string(form.n());
}

void finish_root(PipelineReport& report, const AbsNormalForm& form, double tol) {
  if (!report.outcome.x) return;
  const double r = norm_inf(evaluate(form, *report.outcome.x));
  report.residuals["f_inf"] = r;
  report.verified = report.outcome.solved() && r <= tol;
}

}  // namespace

bool is_p_matrix(const Matrix& m) {
  if (!m.square()) throw DimensionError("is_p_matrix: matrix must be square");
  const std::size_t s = m.rows();
  if (s > kPMatrixLimit) throw std::invalid_argument("is_p_matrix: size exceeds limit");
  std::vector<std::size_t> idx;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    idx.clear();
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    if (!(det(principal_submatrix(m, idx)) > kMinorTolerance)) return false;
  }
  return true;
}

bool is_positive_definite_sufficient(const Matrix& m) {
  if (!m.square()) throw DimensionError("is_positive_definite_sufficient: matrix must be square");
  const std::size_t s = m.rows();
  Matrix a(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
  for (std::size_t j = 0; j < s; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > kMinorTolerance)) return false;
    const double l = std::sqrt(d);
    a(j, j) = l;
    for (std::size_t i = j + 1; i < s; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / l;
    }
  }
  return true;
}

std::optional<RootStrategy> parse_root_strategy(std::string_view name) {
  if (name == "auto") return RootStrategy::kAuto;
  if (name == "mlcp") return RootStrategy::kMlcp;
  if (name == "lcp") return RootStrategy::kLcp;
  if (name == "legacy-mlcp" || name == "legacy_mlcp") return RootStrategy::kLegacyMlcp;
  if (name == "legacy-lcp" || name == "legacy_lcp") return RootStrategy::kLegacyLcp;
  return std::nullopt;
}

std::string_view to_string(RootStrategy strategy) {
  switch (strategy) {
    case RootStrategy::kAuto:
      return "auto";
    case RootStrategy::kMlcp:
      return "mlcp";
    case RootStrategy::kLcp:
      return "lcp";
    case RootStrategy::kLegacyMlcp:
      return "legacy-mlcp";
    case RootStrategy::kLegacyLcp:
      return "legacy-lcp";
  }
  return "?";
}

std::optional<MinimizeMethod> parse_minimize_method(std::string_view name) {
  if (name == "lpcc") return MinimizeMethod::kLpcc;
  if (name == "milp") return MinimizeMethod::kMilp;
  return std::nullopt;
}

std::string_view to_string(Existence e) {
  switch (e) {
    case Existence::kExists:
      return "exists";
    case Existence::kNotExists:
      return "not-exists";
    case Existence::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

PipelineReport root_pipeline(const AbsNormalForm& form, RootStrategy strategy,
                             const PipelineOptions& opt) {
  const auto start = Clock::now();
  PipelineReport report;
  const bool square = form.m() == form.n();
  const AuxiliaryQuantities aux = auxiliary(form);
  if (square) {
    report.nonsingular["J"] = nonsingular(form.J());
    report.nonsingular["J_aux"] = nonsingular(aux.J);
  }

  if (strategy == RootStrategy::kAuto)
    strategy = square && report.nonsingular["J_aux"] ? RootStrategy::kLcp : RootStrategy::kMlcp;

  switch (strategy) {
    case RootStrategy::kAuto:
    case RootStrategy::kMlcp: {
      report.formulation = "root-mlcp";
      report.solver = "enumeration";
      report.outcome = solve_mlcp_enumerate(build_root_mlcp(aux), opt.enumeration);
      break;
    }
    case RootStrategy::kLcp: {
      if (!square) throw PreconditionError("lcp formulation requires m = n");
      const auto lcp = build_root_lcp(form, aux);
      if (!lcp) throw PreconditionError("J_aux singular");
      report.formulation = "root-lcp";
      auto recover = [&](const Vector& w) { return lcp->recover(w); };
      report.outcome = solve_lcp_with_fallback(lcp->lcp, opt, recover, form, report.solver);
      if (report.outcome.solved()) report.outcome.x = lcp->recover(*report.outcome.w);
      break;
    }
    case RootStrategy::kLegacyMlcp: {
      if (!square) throw PreconditionError(legacy_shape_message(form));
      const auto legacy = build_root_mlcp_legacy(form);
      if (!legacy) throw PreconditionError("J singular");
      report.formulation = "legacy-mlcp";
      report.solver = "enumeration";
      report.outcome = solve_mlcp_enumerate(legacy->mlcp, opt.enumeration);
      if (report.outcome.solved())
        report.outcome.x = legacy->recover(*report.outcome.x, *report.outcome.w);
      break;
    }
    case RootStrategy::kLegacyLcp: {
      if (!square) throw PreconditionError(legacy_shape_message(form));
      if (!report.nonsingular["J"]) throw PreconditionError("J singular");
      const auto legacy = build_root_lcp_legacy(form);
      report.nonsingular["I-S"] = legacy.has_value();
      if (!legacy) throw PreconditionError("I - S singular");
      report.formulation = "legacy-lcp";
      auto recover = [&](const Vector& w) { return legacy->recover(w); };
      report.outcome = solve_lcp_with_fallback(legacy->lcp, opt, recover, form, report.solver);
      if (report.outcome.solved()) report.outcome.x = legacy->recover(*report.outcome.w);
      break;
    }
  }

  finish_root(report, form, opt.root_tol);
  report.wall_time_s = seconds_since(start);
  return report;
}

ExistenceReport existence_of_minimum(const AbsNormalForm& form,
                                     const EnumerationOptions& options) {
  const auto start = Clock::now();
  ExistenceReport report;
  report.outcome = solve_mlcp_enumerate(build_existence_mlcp(form), options);
  switch (report.outcome.status) {
    case SolveStatus::kNoSolutionProved:
      report.verdict = Existence::kExists;
      break;
    case SolveStatus::kSolved:
      report.verdict = Existence::kNotExists;
      break;
    default:
      report.verdict = Existence::kIndeterminate;
      break;
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

PipelineReport minimize_pipeline(const AbsNormalForm& form, MinimizeMethod method,
                                 bool check_existence, const PipelineOptions& opt) {
  if (form.m() != 1) throw ShapeError("minimization requires m = 1");
  const auto start = Clock::now();
  PipelineReport report;
  report.formulation = method == MinimizeMethod::kLpcc ? "min-lpcc" : "min-milp";
  report.solver = method == MinimizeMethod::kLpcc ? "enumeration" : "branch-and-bound";

  if (check_existence) {
    const ExistenceReport ex = existence_of_minimum(form, opt.enumeration);
    report.existence = ex.verdict;
    report.existence_certificate = ex.outcome.certificate;
    if (ex.verdict != Existence::kExists) {
      SolveOutcome out;
      out.status = ex.verdict == Existence::kNotExists ? SolveStatus::kUnbounded
                                                       : SolveStatus::kLimitReached;
      if (ex.verdict == Existence::kNotExists) out.ray = ex.outcome.x;
      out.certificate = ex.verdict == Existence::kNotExists
                            ? "no minimum: existence system solved at " + ex.outcome.certificate
                            : "existence check indeterminate: " + ex.outcome.certificate;
      report.outcome = std::move(out);
      report.wall_time_s = seconds_since(start);
      return report;
    }
  }

  const LpccProblem lpcc = build_min_lpcc(form);
  if (method == MinimizeMethod::kLpcc)
    report.outcome = solve_lpcc_enumerate(lpcc, opt.enumeration);
  else
    report.outcome = solve_milp_bb(build_min_milp(lpcc, opt.mu), opt.milp);

  if (report.outcome.solved() && report.outcome.x && report.outcome.objective) {
    const double f = evaluate(form, *report.outcome.x)[0];
    const double gap = std::abs(*report.outcome.objective - f);
    report.residuals["objective_gap"] = gap;
    report.verified = gap <= opt.objective_tol * std::max(1.0, std::abs(f));
  }
  report.wall_time_s = seconds_since(start);
  return report;
}

}  // namespace absnorm
