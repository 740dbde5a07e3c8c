#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "absnorm/analysis.h"
#include "forms.h"

using namespace absnorm;

namespace {

using Rng = std::mt19937_64;

Matrix gaussian(Rng& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = nd(rng);
  return m;
}

Vector gaussian(Rng& rng, std::size_t n, double scale = 1.0) {
  return gaussian(rng, n, 1, scale).column(0);
}

Matrix strict_lower(Rng& rng, std::size_t s) {
  Matrix l = gaussian(rng, s, s, 0.7);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) l(i, j) = 0.0;
  return l;
}

AbsNormalForm random_form(Rng& rng, std::size_t n, std::size_t m, std::size_t s) {
  return AbsNormalForm(gaussian(rng, s), gaussian(rng, m), gaussian(rng, s, n), strict_lower(rng, s),
                       gaussian(rng, m, n), gaussian(rng, m, s));
}

Vector abs_of(const Vector& z) {
  Vector a(z.size());
  std::transform(z.begin(), z.end(), a.begin(), [](double v) { return std::abs(v); });
  return a;
}

// Same form with b shifted so that x0 is a root.
AbsNormalForm plant_root(const AbsNormalForm& f, const Vector& x0) {
  const Vector fx = evaluate(f, x0);
  return AbsNormalForm(f.c(), vecsub(f.b(), fx), f.Z(), f.L(), f.J(), f.Y());
}

// All LCP solutions by principal pivoting on every support, deduplicated.
std::vector<Vector> all_lcp_solutions(const LcpProblem& lcp) {
  const std::size_t s = lcp.size();
  std::vector<Vector> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1U) idx.push_back(i);
    Vector w(s, 0.0);
    if (!idx.empty()) {
      const auto lu = lu_factor(principal_submatrix(lcp.M, idx));
      if (lu.singular()) continue;
      Vector rhs;
      for (std::size_t i : idx) rhs.push_back(-lcp.q[i]);
      const Vector wa = lu.solve(rhs);
      for (std::size_t k = 0; k < idx.size(); ++k) w[idx[k]] = wa[k];
    }
    if (!verify_complementarity(lcp, w, 1e-9)) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Vector& v) {
      return norm_inf(vecsub(v, w)) <= 1e-9;
    });
    if (!dup) found.push_back(w);
  }
  return found;
}

}  // namespace

TEST_CASE("switching vector satisfies its defining equation") {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 5, s = 1 + t % 7;
    const AbsNormalForm f = random_form(rng, n, 1 + t % 3, s);
    const Vector x = gaussian(rng, n, 3.0);
    const Vector z = switching_vector(f, x);
    const Vector rhs = vecadd(vecadd(f.c(), matvec(f.Z(), x)), matvec(f.L(), abs_of(z)));
    CHECK(norm_inf(vecsub(z, rhs)) <= 1e-10 * (1 + norm_inf(z)));
  }
}

TEST_CASE("sign decomposition identity and evaluation equivalence") {
  Rng rng(102);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4, m = 1 + t % 3, s = 1 + t % 6;
    const AbsNormalForm f = random_form(rng, n, m, s);
    const AuxiliaryQuantities aux = auxiliary(f);
    const Vector x = gaussian(rng, n, 2.0);
    const auto d = sign_decomposition(switching_vector(f, x));
    const Vector u = vecadd(vecadd(aux.c, matvec(aux.Z, x)), matvec(aux.L, d.w));
    CHECK(norm_inf(vecsub(u, d.u)) <= 1e-9 * (1 + norm_inf(d.u)));
    const Vector g = vecadd(vecadd(aux.b, matvec(aux.J, x)), matvec(aux.Y, d.w));
    const Vector fx = evaluate(f, x);
    CHECK(norm_inf(vecsub(g, fx)) <= 1e-9 * (1 + norm_inf(fx)));
  }
}

TEST_CASE("horizon form is positively homogeneous") {
  Rng rng(103);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4;
    const AbsNormalForm h = horizon(random_form(rng, n, 1, 1 + t % 5));
    const Vector xi = gaussian(rng, n);
    const double base = evaluate(h, xi)[0];
    for (double lambda : {0.5, 2.0, 10.0}) {
      const double scaled = evaluate(h, vecscale(xi, lambda))[0];
      CHECK(std::abs(scaled - lambda * base) <= 1e-9 * (1 + std::abs(lambda * base)));
    }
  }
}

TEST_CASE("simply switched auxiliary quantities") {
  Rng rng(104);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 3, s = 1 + t % 4;
    const AbsNormalForm f(gaussian(rng, s), gaussian(rng, n), gaussian(rng, s, n),
                          Matrix(s, s), gaussian(rng, n, n), gaussian(rng, n, s));
    const AuxiliaryQuantities aux = auxiliary(f);
    CHECK(aux.Y == scale(f.Y(), 2.0));
    CHECK(aux.J == matadd(f.J(), matmul(f.Y(), f.Z())));
    const auto ss = build_simply_switched_mlcp(f);
    REQUIRE(ss);
    CHECK(ss->eq_w == aux.Y);
  }
}

TEST_CASE("planted roots transport into the MLCP and back") {
  Rng rng(105);
  int solved = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4, m = 1 + (t / 4) % 3, s = 1 + t % 6;
    const Vector x0 = gaussian(rng, n);
    const AbsNormalForm f = plant_root(random_form(rng, n, m, s), x0);
    const MlcpProblem p = build_root_mlcp(f);
    const Vector w0 = sign_decomposition(switching_vector(f, x0)).w;
    CHECK(norm_inf(p.equality_residual(x0, w0)) <= 1e-8);
    CHECK(verify_complementarity(p, x0, w0, 1e-8));
    const SolveOutcome r = solve_mlcp_enumerate(p);
    REQUIRE(r.solved());
    CHECK(verify_complementarity(p, *r.x, *r.w, 1e-7));
    CHECK(norm_inf(evaluate(f, *r.x)) <= 1e-8 * (1 + norm_inf(f.b())));
    ++solved;
  }
  CHECK(solved == 100);
}

TEST_CASE("LCP and MLCP solutions correspond") {
  Rng rng(106);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 5;
    const AbsNormalForm f = plant_root(random_form(rng, n, n, n), gaussian(rng, n));
    const auto lcp = build_root_lcp(f);
    if (!lcp) continue;
    const MlcpProblem mlcp = build_root_mlcp(f);
    const SolveOutcome a = solve_lcp_enumerate(lcp->lcp);
    REQUIRE(a.solved());
    const Vector xa = lcp->recover(*a.w);
    CHECK(verify_complementarity(mlcp, xa, *a.w, 1e-7));
    const SolveOutcome b = solve_mlcp_enumerate(mlcp);
    REQUIRE(b.solved());
    CHECK(verify_complementarity(lcp->lcp, *b.w, 1e-7));
  }
}

TEST_CASE("Lemke and enumeration agree on positive definite LCPs") {
  Rng rng(107);
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = 1 + t % 8;
    const Matrix a = gaussian(rng, s, s);
    const LcpProblem lcp{matadd(matmul(transpose(a), a), Matrix::identity(s)), gaussian(rng, s, 2.0)};
    CHECK(is_positive_definite_sufficient(lcp.M));
    const SolveOutcome l = solve_lcp_lemke(lcp);
    const SolveOutcome e = solve_lcp_enumerate(lcp);
    REQUIRE(l.solved());
    REQUIRE(e.solved());
    CHECK(norm_inf(vecsub(*l.w, *e.w)) <= 1e-7);
    CHECK(verify_complementarity(lcp, *l.w, 1e-7));
  }
}

TEST_CASE("enumeration finds planted LCP solutions") {
  Rng rng(108);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = 1 + t % 7;
    const Matrix m = gaussian(rng, s, s);
    Vector w(s, 0.0), v(s, 0.0);
    for (std::size_t i = 0; i < s; ++i) (rng() & 1U ? w[i] : v[i]) = u(rng);
    const LcpProblem lcp{m, vecsub(v, matvec(m, w))};
    const SolveOutcome r = solve_lcp_enumerate(lcp);
    REQUIRE(r.status == SolveStatus::kSolved);
    CHECK(verify_complementarity(lcp, *r.w, 1e-7));
  }
}

TEST_CASE("LPCC objective equals f on feasible points") {
  Rng rng(109);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 4, s = 1 + t % 6;
    const AbsNormalForm f = random_form(rng, n, 1, s);
    const LpccProblem p = build_min_lpcc(f);
    for (int k = 0; k < 5; ++k) {
      const Vector x = gaussian(rng, n, 3.0);
      const Vector w = sign_decomposition(switching_vector(f, x)).w;
      REQUIRE(verify_complementarity(p, x, w, 1e-9));
      const double fx = evaluate(f, x)[0];
      CHECK(std::abs(p.objective(x, w) - fx) <= 1e-9 * (1 + std::abs(fx)));
    }
  }
}

TEST_CASE("LPCC optimum bounds sampled points and matches the MILP") {
  Rng rng(110);
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 3, s = 1 + t % 5;
    const AbsNormalForm f = random_form(rng, n, 1, s);
    if (existence_of_minimum(f).verdict != Existence::kExists) continue;
    const LpccProblem p = build_min_lpcc(f);
    const SolveOutcome a = solve_lpcc_enumerate(p);
    REQUIRE(a.solved());
    CHECK(verify_complementarity(p, *a.x, *a.w, 1e-7));
    for (int k = 0; k < 10; ++k) {
      const Vector x = gaussian(rng, n, 5.0);
      CHECK(*a.objective <= evaluate(f, x)[0] + 1e-9);
    }
    const SolveOutcome b = solve_milp_bb(build_min_milp(p));
    REQUIRE(b.solved());
    CHECK(std::abs(*a.objective - *b.objective) <= 1e-6 * (1 + std::abs(*a.objective)));
    ++compared;
  }
  CHECK(compared >= 30);
}

TEST_CASE("P-matrix containment") {
  Rng rng(111);
  for (int t = 0; t < 200; ++t) {
    const std::size_t s = 1 + t % 6;
    const Matrix a = gaussian(rng, s, s);
    CHECK(is_p_matrix(matadd(matmul(transpose(a), a), Matrix::identity(s))));
    const Matrix m = gaussian(rng, s, s);
    if (is_positive_definite_sufficient(m)) CHECK(is_p_matrix(m));
  }
}

TEST_CASE("P-matrix reduced data gives exactly one LCP solution") {
  Rng rng(112);
  int witnesses = 0;
  for (int t = 0; t < 20000 && witnesses < 20; ++t) {
    const std::size_t n = 1 + t % 3;
    const AbsNormalForm f = random_form(rng, n, n, n);
    const AuxiliaryQuantities aux = auxiliary(f);
    const auto red = reduced(f, aux);
    if (!red || !is_p_matrix(red->S)) continue;
    const auto lcp = build_root_lcp(f, aux);
    REQUIRE(lcp);
    CHECK(all_lcp_solutions(lcp->lcp).size() == 1);
    const PipelineReport r = root_pipeline(f);
    CHECK(r.formulation == "root-lcp");
    CHECK(r.verified);
    ++witnesses;
  }
  CHECK(witnesses == 20);
}

TEST_CASE("minimizers agree on fixture forms") {
  for (const AbsNormalForm& f : {testforms::nested_scalar(), testforms::three_term_min(),
                                 testforms::kinked_line(), nested_abs_instance(4)}) {
    const PipelineReport a = minimize_pipeline(f, MinimizeMethod::kLpcc);
    const PipelineReport b = minimize_pipeline(f, MinimizeMethod::kMilp);
    REQUIRE(a.outcome.solved());
    REQUIRE(b.outcome.solved());
    CHECK(std::abs(*a.outcome.objective - *b.outcome.objective) <= 1e-6);
    CHECK(a.verified);
    CHECK(b.verified);
  }
}

TEST_CASE("existence agrees with a grid scan in one dimension") {
  // Unbounded below iff f still decreases at an end of [-1e6, 1e6]; the grid
  // is fine near both ends and coarse in between.
  auto scan_exists = [](const AbsNormalForm& f) {
    const double lo = -1e6, hi = 1e6;
    double best = evaluate(f, Vector{lo})[0];
    for (double x = lo; x <= hi; x += 997.0) best = std::min(best, evaluate(f, Vector{x})[0]);
    const double left = evaluate(f, Vector{lo})[0] - evaluate(f, Vector{lo + 1})[0];
    const double right = evaluate(f, Vector{hi})[0] - evaluate(f, Vector{hi - 1})[0];
    return std::isfinite(best) && left >= -1e-6 && right >= -1e-6;
  };
  std::vector<AbsNormalForm> forms{testforms::nested_scalar(), testforms::neg_abs(),
                                   testforms::kinked_line(), nested_abs_instance(1)};
  Rng rng(113);
  for (int t = 0; t < 60; ++t) forms.push_back(random_form(rng, 1, 1, 1 + t % 5));
  int negatives = 0;
  for (const AbsNormalForm& f : forms) {
    const Existence e = existence_of_minimum(f).verdict;
    REQUIRE(e != Existence::kIndeterminate);
    CHECK((e == Existence::kExists) == scan_exists(f));
    negatives += e == Existence::kNotExists;
  }
  CHECK(negatives > 0);
}

TEST_CASE("solved outcomes verify") {
  Rng rng(114);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 3;
    const AbsNormalForm f = plant_root(random_form(rng, n, n, n), gaussian(rng, n));
    for (RootStrategy s : {RootStrategy::kAuto, RootStrategy::kMlcp}) {
      const PipelineReport r = root_pipeline(f, s);
      REQUIRE(r.outcome.solved());
      CHECK(r.verified);
    }
  }
}
