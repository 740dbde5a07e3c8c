#include <cmath>
#include <limits>
#include <sstream>

#include "absnorm/solvers.h"

namespace absnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// How an original variable maps onto nonnegative standard-form columns.
struct VarMap {
  enum Kind { kShifted, kFlipped, kFree, kFixed } kind = kShifted;
  std::size_t col = kNone;
  std::size_t col_neg = kNone;
  double offset = 0.0;  // x = offset + y (shifted), offset - y (flipped)
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double cost(std::size_t c) const { return at(rows_, c); }
  double& cost_rhs() { return at(rows_, cols_); }

  void pivot(std::size_t r, std::size_t c) {
    double* pr = &data_[r * (cols_ + 1)];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j <= cols_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* pi = &data_[i * (cols_ + 1)];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) pi[j] -= f * pr[j];
      pi[c] = 0.0;
      if (i < rows_ && pi[cols_] < 0.0 && pi[cols_] > -1e-11) pi[cols_] = 0.0;
    }
  }

  // Loads a cost vector and prices out the current basis.
  void set_costs(const Vector& costs, const std::vector<std::size_t>& basis,
                 const std::vector<char>& active) {
    for (std::size_t j = 0; j < cols_; ++j) cost(j) = costs[j];
    cost_rhs() = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!active[r]) continue;
      const double cb = costs[basis[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(rows_, j) -= cb * at(r, j);
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

enum class PhaseResult { kOptimal, kUnbounded, kLimit };

PhaseResult iterate(Tableau& t, std::vector<std::size_t>& basis,
                    const std::vector<char>& allowed, const std::vector<char>& active,
                    const LpOptions& opt, std::size_t& iterations,
                    std::size_t& unbounded_col) {
  bool bland = false;
  std::size_t degenerate = 0;
  for (;;) {
    if (iterations >= opt.max_iterations) return PhaseResult::kLimit;

    std::size_t q = kNone;
    double best = -opt.optimality_tol;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j]) continue;
      const double d = t.cost(j);
      if (d >= -opt.optimality_tol) continue;
      if (bland) {
        q = j;
        break;
      }
      if (d < best) {
        best = d;
        q = j;
      }
    }
    if (q == kNone) return PhaseResult::kOptimal;

    std::size_t r = kNone;
    double ratio_best = kInf;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (!active[i]) continue;
      const double a = t.at(i, q);
      if (a <= opt.pivot_tol) continue;
      const double ratio = t.rhs(i) / a;
      const double eps = 1e-12 * (1.0 + std::abs(ratio_best));
      if (r == kNone || ratio < ratio_best - eps ||
          (ratio <= ratio_best + eps && basis[i] < basis[r])) {
        if (r == kNone || ratio < ratio_best) ratio_best = ratio;
        r = i;
      }
    }
    if (r == kNone) {
      unbounded_col = q;
      return PhaseResult::kUnbounded;
    }
    degenerate = ratio_best <= 1e-12 ? degenerate + 1 : 0;
    if (degenerate >= opt.degenerate_switch) bland = true;
    t.pivot(r, q);
    basis[r] = q;
    ++iterations;
  }
}

}  // namespace

void LpProblem::validate() const {
  const std::size_t n = objective.size();
  if (eq_matrix.rows() != eq_rhs.size() || (eq_matrix.rows() && eq_matrix.cols() != n))
    throw DimensionError("LP equality block shape");
  if (ge_matrix.rows() != ge_rhs.size() || (ge_matrix.rows() && ge_matrix.cols() != n))
    throw DimensionError("LP inequality block shape");
  if (!lower.empty() && lower.size() != n) throw DimensionError("LP lower bounds length");
  if (!upper.empty() && upper.size() != n) throw DimensionError("LP upper bounds length");
}

SolveOutcome solve_lp(const LpProblem& lp, const LpOptions& opt) {
  lp.validate();
  const std::size_t nv = lp.num_vars();
  SolveOutcome out;

  // Column layout: structural columns, then slacks, then artificials.
  std::vector<VarMap> vars(nv);
  std::size_t ncols = 0;
  std::vector<std::size_t> ub_vars;
  for (std::size_t j = 0; j < nv; ++j) {
    const double l = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double u = lp.upper.empty() ? kInf : lp.upper[j];
    if (l > u + opt.feasibility_tol) {
      out.status = SolveStatus::kInfeasible;
      out.certificate = "empty variable bounds";
      return out;
    }
    VarMap& v = vars[j];
    if (std::isfinite(l) && std::isfinite(u) && u - l <= opt.feasibility_tol) {
      v.kind = VarMap::kFixed;
      v.offset = l;
    } else if (std::isfinite(l)) {
      v.kind = VarMap::kShifted;
      v.offset = l;
      v.col = ncols++;
      if (std::isfinite(u)) ub_vars.push_back(j);
    } else if (std::isfinite(u)) {
      v.kind = VarMap::kFlipped;
      v.offset = u;
      v.col = ncols++;
    } else {
      v.kind = VarMap::kFree;
      v.col = ncols++;
      v.col_neg = ncols++;
    }
  }
  const std::size_t n_eq = lp.eq_rhs.size();
  const std::size_t n_ge = lp.ge_rhs.size();
  const std::size_t n_ub = ub_vars.size();
  const std::size_t nrows = n_eq + n_ge + n_ub;
  const std::size_t slack0 = ncols;
  ncols += n_ge + n_ub;

  // Dense standard-form rows: coefficients over structural + slack columns.
  std::vector<Vector> rows(nrows, Vector(ncols, 0.0));
  Vector rhs(nrows, 0.0);
  auto load = [&](std::size_t r, std::span<const double> a, double b) {
    double adj = b;
    for (std::size_t j = 0; j < nv; ++j) {
      const double aj = a[j];
      if (aj == 0.0) continue;
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarMap::kFixed:
          adj -= aj * v.offset;
          break;
        case VarMap::kShifted:
          rows[r][v.col] += aj;
          adj -= aj * v.offset;
          break;
        case VarMap::kFlipped:
          rows[r][v.col] -= aj;
          adj -= aj * v.offset;
          break;
        case VarMap::kFree:
          rows[r][v.col] += aj;
          rows[r][v.col_neg] -= aj;
          break;
      }
    }
    rhs[r] = adj;
  };
  for (std::size_t i = 0; i < n_eq; ++i) load(i, lp.eq_matrix.row(i), lp.eq_rhs[i]);
  for (std::size_t i = 0; i < n_ge; ++i) {
    load(n_eq + i, lp.ge_matrix.row(i), lp.ge_rhs[i]);
    rows[n_eq + i][slack0 + i] = -1.0;
  }
  for (std::size_t k = 0; k < n_ub; ++k) {
    const VarMap& v = vars[ub_vars[k]];
    const std::size_t r = n_eq + n_ge + k;
    rows[r][v.col] = 1.0;
    rows[r][slack0 + n_ge + k] = 1.0;
    rhs[r] = lp.upper[ub_vars[k]] - v.offset;
  }

  // Nonnegative right-hand sides; slacks with +1 start basic, the remaining
  // rows get artificials.
  std::vector<std::size_t> basis(nrows, kNone);
  std::size_t n_art = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    if (rhs[r] < 0.0) {
      rhs[r] = -rhs[r];
      for (double& a : rows[r]) a = -a;
    }
    for (std::size_t j = slack0; j < slack0 + n_ge + n_ub; ++j) {
      if (rows[r][j] == 1.0) {
        basis[r] = j;
        break;
      }
    }
    if (basis[r] == kNone) ++n_art;
  }
  const std::size_t art0 = ncols;
  ncols += n_art;

  Tableau t(nrows, ncols);
  {
    std::size_t next_art = art0;
    for (std::size_t r = 0; r < nrows; ++r) {
      for (std::size_t j = 0; j < art0; ++j) t.at(r, j) = rows[r][j];
      t.rhs(r) = rhs[r];
      if (basis[r] == kNone) {
        t.at(r, next_art) = 1.0;
        basis[r] = next_art++;
      }
    }
  }

  std::vector<char> active(nrows, 1);
  std::size_t iterations = 0;
  std::size_t unbounded_col = kNone;

  if (n_art > 0) {
    Vector phase1(ncols, 0.0);
    for (std::size_t j = art0; j < ncols; ++j) phase1[j] = 1.0;
    t.set_costs(phase1, basis, active);
    std::vector<char> allowed(ncols, 1);
    const PhaseResult res = iterate(t, basis, allowed, active, opt, iterations, unbounded_col);
    out.iterations = iterations;
    if (res == PhaseResult::kLimit) {
      out.status = SolveStatus::kLimitReached;
      out.certificate = "simplex iteration limit in phase 1";
      return out;
    }
    const double infeasibility = -t.cost_rhs();
    const double scale = 1.0 + norm_inf(rhs);
    if (infeasibility > opt.feasibility_tol * scale) {
      out.status = SolveStatus::kInfeasible;
      std::ostringstream os;
      os << "phase 1 optimum " << infeasibility;
      out.certificate = os.str();
      return out;
    }
    // Drive artificials out of the basis; rows that cannot be repaired are
    // linearly dependent and are dropped.
    for (std::size_t r = 0; r < nrows; ++r) {
      if (basis[r] < art0) continue;
      std::size_t best = kNone;
      double mag = 1e-9;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(t.at(r, j)) > mag) {
          mag = std::abs(t.at(r, j));
          best = j;
        }
      }
      if (best == kNone) {
        active[r] = 0;
      } else {
        t.pivot(r, best);
        basis[r] = best;
      }
    }
  }

  Vector costs(ncols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    const double cj = lp.objective[j];
    const VarMap& v = vars[j];
    switch (v.kind) {
      case VarMap::kFixed:
        break;
      case VarMap::kShifted:
        costs[v.col] += cj;
        break;
      case VarMap::kFlipped:
        costs[v.col] -= cj;
        break;
      case VarMap::kFree:
        costs[v.col] += cj;
        costs[v.col_neg] -= cj;
        break;
    }
  }
  t.set_costs(costs, basis, active);
  std::vector<char> allowed(ncols, 1);
  for (std::size_t j = art0; j < ncols; ++j) allowed[j] = 0;
  const PhaseResult res = iterate(t, basis, allowed, active, opt, iterations, unbounded_col);
  out.iterations = iterations;
  if (res == PhaseResult::kLimit) {
    out.status = SolveStatus::kLimitReached;
    out.certificate = "simplex iteration limit in phase 2";
    return out;
  }

  Vector y(ncols, 0.0);
  for (std::size_t r = 0; r < nrows; ++r)
    if (active[r]) y[basis[r]] = t.rhs(r);
  auto to_original = [&](const Vector& ys, bool direction) {
    Vector x(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
      const VarMap& v = vars[j];
      const double base = direction ? 0.0 : v.offset;
      switch (v.kind) {
        case VarMap::kFixed:
          x[j] = base;
          break;
        case VarMap::kShifted:
          x[j] = base + ys[v.col];
          break;
        case VarMap::kFlipped:
          x[j] = base - ys[v.col];
          break;
        case VarMap::kFree:
          x[j] = ys[v.col] - ys[v.col_neg];
          break;
      }
    }
    return x;
  };

  if (res == PhaseResult::kUnbounded) {
    Vector d(ncols, 0.0);
    d[unbounded_col] = 1.0;
    for (std::size_t r = 0; r < nrows; ++r)
      if (active[r]) d[basis[r]] = -t.at(r, unbounded_col);
    out.status = SolveStatus::kUnbounded;
    out.x = to_original(y, false);
    out.ray = to_original(d, true);
    out.certificate = "improving ray";
    return out;
  }

  out.status = SolveStatus::kSolved;
  out.x = to_original(y, false);
  out.objective = lp.objective_const + dot(lp.objective, *out.x);
  return out;
}

}  // namespace absnorm
