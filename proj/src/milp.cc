#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "absnorm/solvers.h"

namespace absnorm {

namespace {

struct Node {
  double bound;
  double key;  // bound quantized so near-equal bounds tie
  std::size_t depth;
  bool preferred;
  std::size_t id;
  std::vector<signed char> fixed;  // -1 free, else the fixed binary value
};

// Best bound first; among equal bounds dive deeper, then the rounding
// direction, then creation order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.key != b.key) return a.key > b.key;
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.preferred != b.preferred) return !a.preferred;
    return a.id > b.id;
  }
};

double quantize(double bound) {
  return std::isfinite(bound) ? std::round(bound * 1e8) / 1e8 : bound;
}

}  // namespace

LpProblem milp_relaxation(const MilpProblem& milp) {
  const LpccProblem& p = milp.lpcc;
  p.validate();
  const std::size_t nx = p.n_x();
  const std::size_t s = p.s();
  const std::size_t nv = nx + 2 * s;
  const double mu = milp.mu;
  constexpr double inf = std::numeric_limits<double>::infinity();

  LpProblem lp;
  lp.objective.assign(nv, 0.0);
  std::copy(p.obj_x.begin(), p.obj_x.end(), lp.objective.begin());
  std::copy(p.obj_w.begin(), p.obj_w.end(), lp.objective.begin() + static_cast<std::ptrdiff_t>(nx));
  lp.objective_const = p.obj_const;
  lp.eq_matrix = Matrix(0, nv);
  lp.ge_matrix = Matrix(3 * s, nv);
  lp.ge_rhs.assign(3 * s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    // mu y_i - w_i >= 0
    lp.ge_matrix(i, nx + i) = -1.0;
    lp.ge_matrix(i, nx + s + i) = mu;
    // comp_i >= 0  and  mu (1 - y_i) - comp_i >= 0
    for (std::size_t j = 0; j < nx; ++j) {
      lp.ge_matrix(s + i, j) = p.comp_x(i, j);
      lp.ge_matrix(2 * s + i, j) = -p.comp_x(i, j);
    }
    for (std::size_t k = 0; k < s; ++k) {
      lp.ge_matrix(s + i, nx + k) = p.comp_w(i, k);
      lp.ge_matrix(2 * s + i, nx + k) = -p.comp_w(i, k);
    }
    lp.ge_matrix(2 * s + i, nx + s + i) = -mu;
    lp.ge_rhs[s + i] = -p.comp_const[i];
    lp.ge_rhs[2 * s + i] = p.comp_const[i] - mu;
  }
  lp.lower.assign(nv, 0.0);
  lp.upper.assign(nv, inf);
  for (std::size_t j = 0; j < nx; ++j) lp.lower[j] = -inf;
  for (std::size_t i = 0; i < s; ++i) lp.upper[nx + s + i] = 1.0;
  return lp;
}

SolveOutcome solve_milp_bb(const MilpProblem& milp, const MilpOptions& opt) {
  if (!(milp.mu > 0.0)) throw std::invalid_argument("solve_milp_bb: mu must be positive");
  const LpProblem base = milp_relaxation(milp);
  const std::size_t nx = milp.lpcc.n_x();
  const std::size_t s = milp.lpcc.s();
  const std::size_t y0 = nx + s;

  auto node_lp = [&](const std::vector<signed char>& fixed) {
    LpProblem lp = base;
    for (std::size_t i = 0; i < s; ++i) {
      if (fixed[i] < 0) continue;
      lp.lower[y0 + i] = fixed[i];
      lp.upper[y0 + i] = fixed[i];
    }
    return lp;
  };

  SolveOutcome best;
  best.status = SolveStatus::kInfeasible;
  std::size_t next_id = 0;
  std::size_t nodes = 0;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  open.push(Node{neg_inf, neg_inf, 0, true, next_id++, std::vector<signed char>(s, -1)});

  auto pruned = [&](double bound) {
    if (!best.objective) return false;
    const double inc = *best.objective;
    return bound >= inc - opt.relative_gap * std::max(1.0, std::abs(inc));
  };

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (pruned(node.bound)) continue;
    if (nodes >= opt.node_limit) {
      best.status = SolveStatus::kLimitReached;
      best.iterations = nodes;
      best.certificate = "node limit reached" +
                         std::string(best.objective ? " with incumbent" : " without incumbent");
      return best;
    }
    ++nodes;

    const SolveOutcome r = solve_lp(node_lp(node.fixed), opt.lp);
    if (r.status == SolveStatus::kInfeasible) continue;
    if (r.status == SolveStatus::kUnbounded) {
      SolveOutcome out;
      out.status = SolveStatus::kUnbounded;
      out.x = Vector(r.x->begin(), r.x->begin() + static_cast<std::ptrdiff_t>(nx));
      out.ray = Vector(r.ray->begin(), r.ray->begin() + static_cast<std::ptrdiff_t>(nx));
      out.iterations = nodes;
      out.certificate = "LP relaxation unbounded";
      return out;
    }
    if (!r.solved()) {
      best.status = SolveStatus::kLimitReached;
      best.iterations = nodes;
      best.certificate = "node LP failed: " + r.certificate;
      return best;
    }
    if (pruned(*r.objective)) continue;

    const Vector& v = *r.x;
    std::size_t branch = s;
    double worst = opt.integrality_tol;
    for (std::size_t i = 0; i < s; ++i) {
      if (node.fixed[i] >= 0) continue;
      const double frac = std::abs(v[y0 + i] - std::round(v[y0 + i]));
      if (frac > worst) {
        worst = frac;
        branch = i;
      }
    }

    if (branch == s) {
      // Integral within tolerance: re-solve with every y pinned.
      std::vector<signed char> pinned(node.fixed);
      for (std::size_t i = 0; i < s; ++i)
        if (pinned[i] < 0) pinned[i] = v[y0 + i] > 0.5 ? 1 : 0;
      const SolveOutcome leaf = pinned == node.fixed ? r : solve_lp(node_lp(pinned), opt.lp);
      if (leaf.solved()) {
        const Vector& lv = *leaf.x;
        Vector x(lv.begin(), lv.begin() + static_cast<std::ptrdiff_t>(nx));
        Vector w(lv.begin() + static_cast<std::ptrdiff_t>(nx),
                 lv.begin() + static_cast<std::ptrdiff_t>(y0));
        for (double& wi : w) wi = std::max(0.0, wi);
        const double value = milp.lpcc.objective(x, w);
        if (!best.objective || value < *best.objective) {
          best.status = SolveStatus::kSolved;
          best.objective = value;
          best.x = std::move(x);
          best.w = std::move(w);
          best.y = std::vector<int>(pinned.begin(), pinned.end());
        }
        if (pruned(*r.objective)) continue;
      }
      // Pinning broke feasibility or lost the node bound; branch on the least integral free y.
      worst = -1.0;
      for (std::size_t i = 0; i < s; ++i) {
        if (node.fixed[i] >= 0) continue;
        const double frac = std::abs(v[y0 + i] - std::round(v[y0 + i]));
        if (frac > worst) {
          worst = frac;
          branch = i;
        }
      }
      if (branch == s) continue;
    }

    const bool up_first = v[y0 + branch] >= 0.5;
    for (signed char value : {0, 1}) {
      Node child{*r.objective, quantize(*r.objective), node.depth + 1,
                 (value == 1) == up_first, next_id++, node.fixed};
      child.fixed[branch] = value;
      open.push(std::move(child));
    }
  }

  best.iterations = nodes;
  std::ostringstream os;
  os << nodes << " nodes";
  best.certificate = best.solved() ? os.str() : "no integer-feasible node; " + os.str();
  return best;
}

}  // namespace absnorm
