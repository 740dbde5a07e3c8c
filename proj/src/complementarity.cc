#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "absnorm/solvers.h"

namespace absnorm {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<std::size_t> pattern_indices(std::uint64_t mask, std::size_t s) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s; ++i)
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  return idx;
}

std::string pattern_string(std::uint64_t mask, std::size_t s) {
  std::string bits(s, '0');
  for (std::size_t i = 0; i < s; ++i)
    if (mask & (std::uint64_t{1} << i)) bits[i] = '1';
  return "{" + bits + "}";
}

std::string exhausted(std::size_t s) {
  std::ostringstream os;
  os << "all " << (std::uint64_t{1} << s) << " sign patterns infeasible";
  return os.str();
}

SolveOutcome over_limit(std::size_t s, std::size_t limit) {
  SolveOutcome out;
  out.status = SolveStatus::kLimitReached;
  std::ostringstream os;
  os << "s = " << s << " exceeds the enumeration limit " << limit;
  out.certificate = os.str();
  return out;
}

bool within_limit(std::size_t s, std::size_t limit) {
  return s <= limit && s < 63;
}

// A single complementarity pattern of an MLCP in (x, w): w_i = 0 outside
// alpha, comp_i = 0 inside alpha, everything else sign-constrained.
struct PatternSystem {
  Matrix eq;  // rows: equality block, then comp rows in alpha
  Vector eq_rhs;
  Matrix ge;  // comp rows outside alpha
  Vector ge_rhs;
};

PatternSystem assemble(const MlcpProblem& p, std::span<const std::size_t> alpha,
                       std::span<const std::size_t> beta) {
  const std::size_t nx = p.n_x();
  const std::size_t na = alpha.size();
  const std::size_t r = p.n_eq();
  PatternSystem sys{Matrix(r + na, nx + na), Vector(r + na), Matrix(beta.size(), nx + na),
                    Vector(beta.size())};
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < nx; ++j) sys.eq(i, j) = p.eq_x(i, j);
    for (std::size_t k = 0; k < na; ++k) sys.eq(i, nx + k) = p.eq_w(i, alpha[k]);
    sys.eq_rhs[i] = -p.eq_const[i];
  }
  auto comp_row = [&](Matrix& dst, std::size_t row, std::size_t i) {
    for (std::size_t j = 0; j < nx; ++j) dst(row, j) = p.comp_x(i, j);
    for (std::size_t k = 0; k < na; ++k) dst(row, nx + k) = p.comp_w(i, alpha[k]);
  };
  for (std::size_t k = 0; k < na; ++k) {
    comp_row(sys.eq, r + k, alpha[k]);
    sys.eq_rhs[r + k] = -p.comp_const[alpha[k]];
  }
  for (std::size_t k = 0; k < beta.size(); ++k) {
    comp_row(sys.ge, k, beta[k]);
    sys.ge_rhs[k] = -p.comp_const[beta[k]];
  }
  return sys;
}

LpProblem pattern_lp(const PatternSystem& sys, std::size_t nx, Vector objective) {
  const std::size_t nv = sys.eq.cols();
  LpProblem lp;
  lp.objective = objective.empty() ? Vector(nv, 0.0) : std::move(objective);
  lp.eq_matrix = sys.eq;
  lp.eq_rhs = sys.eq_rhs;
  lp.ge_matrix = sys.ge;
  lp.ge_rhs = sys.ge_rhs;
  lp.lower.assign(nv, 0.0);
  lp.upper.assign(nv, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < nx; ++j) lp.lower[j] = -std::numeric_limits<double>::infinity();
  return lp;
}

void split(const Vector& v, std::size_t nx, std::span<const std::size_t> alpha,
           std::size_t s, Vector& x, Vector& w) {
  x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nx));
  w.assign(s, 0.0);
  for (std::size_t k = 0; k < alpha.size(); ++k) w[alpha[k]] = std::max(0.0, v[nx + k]);
}

// Decides one pattern.  Square nonsingular systems have a unique candidate,
// so a sign check is conclusive; everything else goes through phase 1.
bool solve_pattern(const MlcpProblem& p, std::span<const std::size_t> alpha,
                   std::span<const std::size_t> beta, const Tolerances& tol,
                   Vector& x, Vector& w) {
  const PatternSystem sys = assemble(p, alpha, beta);
  const std::size_t nx = p.n_x();
  if (sys.eq.square()) {
    const LuFactorization f = lu_factor(sys.eq);
    if (!f.singular()) {
      const Vector v = f.solve(sys.eq_rhs);
      for (std::size_t k = 0; k < alpha.size(); ++k)
        if (v[nx + k] < -tol.nonnegativity) return false;
      const Vector g = matvec(sys.ge, v);
      for (std::size_t k = 0; k < beta.size(); ++k)
        if (g[k] - sys.ge_rhs[k] < -tol.nonnegativity) return false;
      split(v, nx, alpha, p.s(), x, w);
      return true;
    }
  }
  const SolveOutcome lp = solve_lp(pattern_lp(sys, nx, {}));
  if (!lp.solved()) return false;
  split(*lp.x, nx, alpha, p.s(), x, w);
  return true;
}

MlcpProblem as_mlcp(const LcpProblem& lcp) {
  const std::size_t s = lcp.size();
  return MlcpProblem{Vector{}, Matrix(0, 0), Matrix(0, s), lcp.q, Matrix(s, 0), lcp.M};
}

// Re-solves M_aa w_a = -q_a on the support reported by a pivoting method.
bool polish_lcp(const LcpProblem& lcp, Vector& w, const Tolerances& tol) {
  std::vector<std::size_t> alpha;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > 0.0) alpha.push_back(i);
  if (alpha.empty()) return true;
  const LuFactorization f = lu_factor(principal_submatrix(lcp.M, alpha));
  if (f.singular()) return false;
  Vector rhs(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) rhs[k] = -lcp.q[alpha[k]];
  const Vector wa = f.solve(rhs);
  Vector candidate(w.size(), 0.0);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (wa[k] < -tol.nonnegativity) return false;
    candidate[alpha[k]] = std::max(0.0, wa[k]);
  }
  const Vector slack = vecadd(lcp.q, matvec(lcp.M, candidate));
  for (double v : slack)
    if (v < -tol.nonnegativity) return false;
  w = std::move(candidate);
  return true;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved:
      return "Solved";
    case SolveStatus::kNoSolutionProved:
      return "NoSolutionProved";
    case SolveStatus::kRayTermination:
      return "RayTermination";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
    case SolveStatus::kLimitReached:
      return "LimitReached";
  }
  return "Unknown";
}

std::size_t enumeration_limit_from_env() {
  const char* raw = std::getenv("ABSNORM_ENUM_LIMIT");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationLimit;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') return kDefaultEnumerationLimit;
  return static_cast<std::size_t>(v);
}

SolveOutcome solve_lcp_lemke(const LcpProblem& lcp, std::size_t max_pivots,
                             const Tolerances& tol) {
  const std::size_t n = lcp.size();
  if (!lcp.M.square() || lcp.M.rows() != n) throw DimensionError("LCP: M must be s x s");
  if (max_pivots == 0) max_pivots = 100 * (n + 1);
  SolveOutcome out;

  if (n == 0 || *std::min_element(lcp.q.begin(), lcp.q.end()) >= 0.0) {
    out.status = SolveStatus::kSolved;
    out.w = Vector(n, 0.0);
    out.certificate = "q >= 0";
    return out;
  }

  // Columns: slacks v (0..n-1), w (n..2n-1), artificial z0 (2n), rhs (2n+1).
  const std::size_t width = 2 * n + 2;
  const std::size_t z0 = 2 * n;
  const std::size_t rhs = 2 * n + 1;
  std::vector<double> t(n * width, 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return t[i * width + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) at(i, n + j) = -lcp.M(i, j);
    at(i, z0) = -1.0;
    at(i, rhs) = lcp.q[i];
  }
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[i] = i;

  auto pivot = [&](std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j < width; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) at(i, rhs) = std::max(0.0, at(i, rhs));
    basis[r] = c;
  };

  // Lexicographic comparison of rows scaled by the entering column.
  auto lex_less = [&](std::size_t a, std::size_t b, std::size_t col) {
    for (std::size_t j = 0; j < n; ++j) {
      const double da = at(a, j) / at(a, col);
      const double db = at(b, j) / at(b, col);
      if (std::abs(da - db) > 1e-12 * (1.0 + std::abs(da))) return da < db;
    }
    return a < b;
  };

  // Most negative q; ties go to the last index, matching the lexicographic
  // rule below on the initial basis.
  std::size_t leave = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (at(i, rhs) <= at(leave, rhs)) leave = i;
  std::size_t entering = z0;
  std::size_t pivots = 0;
  for (;;) {
    const std::size_t leaving_var = basis[leave];
    pivot(leave, entering);
    ++pivots;
    if (leaving_var == z0) break;
    entering = leaving_var < n ? leaving_var + n : leaving_var - n;
    if (pivots >= max_pivots) {
      out.status = SolveStatus::kLimitReached;
      out.iterations = pivots;
      out.certificate = "Lemke pivot limit";
      return out;
    }

    std::size_t r = kNone;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double a = at(i, entering);
      if (a <= 1e-12) continue;
      const double ratio = at(i, rhs) / a;
      if (r == kNone || ratio < best - 1e-10 * (1.0 + best)) {
        best = ratio;
        r = i;
      }
    }
    if (r == kNone) {
      out.status = SolveStatus::kRayTermination;
      out.iterations = pivots;
      out.certificate = "secondary ray";
      return out;
    }
    // Ties: z0 leaves if it can, otherwise the lexicographic minimum.
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      const double a = at(i, entering);
      if (a <= 1e-12) continue;
      const double ratio = at(i, rhs) / a;
      if (std::abs(ratio - best) > 1e-10 * (1.0 + best)) continue;
      if (basis[i] == z0) {
        r = i;
        break;
      }
      if (basis[r] != z0 && lex_less(i, r, entering)) r = i;
    }
    leave = r;
  }

  Vector w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (basis[i] >= n && basis[i] < 2 * n) w[basis[i] - n] = at(i, rhs);
  polish_lcp(lcp, w, tol);
  out.iterations = pivots;
  if (!verify_complementarity(lcp, w, 1e-7 * (1.0 + norm_inf(lcp.q)))) {
    out.status = SolveStatus::kLimitReached;
    out.certificate = "Lemke terminated with residuals above tolerance";
    return out;
  }
  out.status = SolveStatus::kSolved;
  out.w = std::move(w);
  std::ostringstream os;
  os << pivots << " Lemke pivots";
  out.certificate = os.str();
  return out;
}

SolveOutcome solve_lcp_enumerate(const LcpProblem& lcp, const EnumerationOptions& opt) {
  const std::size_t s = lcp.size();
  if (!lcp.M.square() || lcp.M.rows() != s) throw DimensionError("LCP: M must be s x s");
  if (!within_limit(s, opt.limit)) return over_limit(s, opt.limit);
  const MlcpProblem as = as_mlcp(lcp);
  const std::uint64_t total = std::uint64_t{1} << s;
  SolveOutcome out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto alpha = pattern_indices(mask, s);
    const auto beta = pattern_indices(~mask & (total - 1), s);
    Vector x, w;
    if (solve_pattern(as, alpha, beta, opt.tol, x, w)) {
      out.status = SolveStatus::kSolved;
      out.w = std::move(w);
      out.iterations = mask + 1;
      out.certificate = "pattern " + pattern_string(mask, s);
      return out;
    }
  }
  out.status = SolveStatus::kNoSolutionProved;
  out.iterations = total;
  out.certificate = exhausted(s);
  return out;
}

SolveOutcome solve_mlcp_enumerate(const MlcpProblem& mlcp, const EnumerationOptions& opt) {
  mlcp.validate();
  const std::size_t s = mlcp.s();
  if (!within_limit(s, opt.limit)) return over_limit(s, opt.limit);
  const std::uint64_t total = std::uint64_t{1} << s;
  SolveOutcome out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto alpha = pattern_indices(mask, s);
    const auto beta = pattern_indices(~mask & (total - 1), s);
    Vector x, w;
    if (solve_pattern(mlcp, alpha, beta, opt.tol, x, w)) {
      out.status = SolveStatus::kSolved;
      out.x = std::move(x);
      out.w = std::move(w);
      out.iterations = mask + 1;
      out.certificate = "pattern " + pattern_string(mask, s);
      return out;
    }
  }
  out.status = SolveStatus::kNoSolutionProved;
  out.iterations = total;
  out.certificate = exhausted(s);
  return out;
}

SolveOutcome solve_lpcc_enumerate(const LpccProblem& lpcc, const EnumerationOptions& opt) {
  lpcc.validate();
  const std::size_t s = lpcc.s();
  const std::size_t nx = lpcc.n_x();
  if (!within_limit(s, opt.limit)) return over_limit(s, opt.limit);
  const MlcpProblem constraints{Vector{},        Matrix(0, nx),   Matrix(0, s),
                                lpcc.comp_const, lpcc.comp_x,     lpcc.comp_w};
  const std::uint64_t total = std::uint64_t{1} << s;
  SolveOutcome best;
  best.status = SolveStatus::kInfeasible;
  std::size_t feasible = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const auto alpha = pattern_indices(mask, s);
    const auto beta = pattern_indices(~mask & (total - 1), s);
    Vector objective(lpcc.obj_x);
    for (std::size_t i : alpha) objective.push_back(lpcc.obj_w[i]);
    LpProblem lp = pattern_lp(assemble(constraints, alpha, beta), nx, std::move(objective));
    lp.objective_const = lpcc.obj_const;
    const SolveOutcome r = solve_lp(lp);
    if (r.status == SolveStatus::kInfeasible) continue;
    if (r.status == SolveStatus::kLimitReached) {
      best.status = SolveStatus::kLimitReached;
      best.certificate = "branch LP hit its iteration limit at pattern " + pattern_string(mask, s);
      best.iterations = mask + 1;
      return best;
    }
    ++feasible;
    Vector x, w;
    split(*r.x, nx, alpha, s, x, w);
    if (r.status == SolveStatus::kUnbounded) {
      SolveOutcome out;
      out.status = SolveStatus::kUnbounded;
      out.x = std::move(x);
      out.w = std::move(w);
      Vector rx, rw;
      split(*r.ray, nx, alpha, s, rx, rw);
      out.ray = std::move(rx);
      out.iterations = mask + 1;
      out.certificate = "branch LP unbounded at pattern " + pattern_string(mask, s);
      return out;
    }
    const double value = lpcc.objective(x, w);
    if (!best.objective || value < *best.objective) {
      best.status = SolveStatus::kSolved;
      best.objective = value;
      best.x = std::move(x);
      best.w = std::move(w);
      best.certificate = "best branch " + pattern_string(mask, s);
    }
  }
  best.iterations = total;
  std::ostringstream os;
  os << "; " << feasible << " of " << total << " branches feasible";
  if (best.solved()) best.certificate += os.str();
  else best.certificate = "no feasible branch" + os.str();
  return best;
}

bool verify_complementarity(const MlcpProblem& mlcp, std::span<const double> x,
                            std::span<const double> w, double tol) {
  if (x.size() != mlcp.n_x() || w.size() != mlcp.s()) return false;
  if (norm_inf(mlcp.equality_residual(x, w)) > tol) return false;
  const Vector comp = mlcp.complement(x, w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < -tol || comp[i] < -tol) return false;
    if (std::abs(w[i] * comp[i]) > tol) return false;
  }
  return true;
}

bool verify_complementarity(const LcpProblem& lcp, std::span<const double> w, double tol) {
  return verify_complementarity(as_mlcp(lcp), std::span<const double>{}, w, tol);
}

bool verify_complementarity(const LpccProblem& lpcc, std::span<const double> x,
                            std::span<const double> w, double tol) {
  const std::size_t s = lpcc.s();
  const MlcpProblem constraints{Vector{},        Matrix(0, lpcc.n_x()), Matrix(0, s),
                                lpcc.comp_const, lpcc.comp_x,           lpcc.comp_w};
  return verify_complementarity(constraints, x, w, tol);
}

bool verify_root(const AbsNormalForm& form, std::span<const double> x, double tol) {
  if (x.size() != form.n()) return false;
  return norm_inf(evaluate(form, x)) <= tol;
}

}  // namespace absnorm
