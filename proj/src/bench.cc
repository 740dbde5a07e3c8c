#include "absnorm/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "absnorm/anf.h"
#include "absnorm/formulations.h"

namespace absnorm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

AbsNormalForm instance(const BenchConfig& cfg, std::size_t n, std::size_t rep) {
  switch (cfg.preset) {
    case BenchPreset::kNested:
      return nested_abs_instance(n);
    case BenchPreset::kExample64:
      return random_instance(n, cfg.seed + 1000 * n + rep, InstancePreset::kExample64);
    case BenchPreset::kExample63:
      break;
  }
  return random_instance(n, cfg.seed + 1000 * n + rep, InstancePreset::kExample63);
}

double root_residual(const AbsNormalForm& form, const SolveOutcome& out) {
  return out.x ? norm_inf(evaluate(form, *out.x)) : std::nan("");
}

std::string status_of(const SolveOutcome& out, double residual, double tol) {
  if (out.solved() && !(residual <= tol)) return "Unverified";
  return std::string(to_string(out.status));
}

// Times build() then solve(built); records status and residual.
template <class Build, class Solve>
BenchRecord measure(const BenchConfig& cfg, const AbsNormalForm& form, std::string name,
                    std::string solver, Build build, Solve solve) {
  BenchRecord rec;
  rec.n = form.n();
  rec.formulation = std::move(name);
  rec.solver = std::move(solver);
  const auto t0 = Clock::now();
  auto built = build();
  const auto t1 = Clock::now();
  rec.build_time_s = seconds(t0, t1);
  if (!built) {
    rec.status = "Precondition";
    rec.residual = std::nan("");
    return rec;
  }
  const auto t2 = Clock::now();
  auto [out, residual] = solve(*built);
  rec.solve_time_s = seconds(t2, Clock::now());
  rec.residual = residual;
  rec.status = status_of(out, residual, cfg.verify_tol);
  return rec;
}

BenchRecord run_one(const BenchConfig& cfg, const AbsNormalForm& form, const std::string& name) {
  const auto& eo = cfg.enumeration;
  const bool square = form.m() == form.n();
  const bool scalar = form.m() == 1;

  if (name == "aux") {
    BenchRecord rec{form.n(), name, "direct", 0.0, 0.0, "Built", 0.0};
    const auto t0 = Clock::now();
    const AuxiliaryQuantities aux = auxiliary(form);
    rec.build_time_s = seconds(t0, Clock::now());
    rec.residual = all_finite(aux.J.data()) ? 0.0 : std::nan("");
    return rec;
  }
  if (name == "lcp" || name == "lcp-enum") {
    const bool lemke = name == "lcp";
    return measure(
        cfg, form, name, lemke ? "lemke" : "enumeration",
        [&] { return square ? build_root_lcp(form) : std::optional<RootLcp>{}; },
        [&](const RootLcp& p) {
          SolveOutcome out = lemke ? solve_lcp_lemke(p.lcp, 0, eo.tol)
                                   : solve_lcp_enumerate(p.lcp, eo);
          if (out.solved()) out.x = p.recover(*out.w);
          return std::pair{out, root_residual(form, out)};
        });
  }
  if (name == "mlcp") {
    return measure(
        cfg, form, name, "enumeration",
        [&] { return std::optional<MlcpProblem>(build_root_mlcp(form)); },
        [&](const MlcpProblem& p) {
          SolveOutcome out = solve_mlcp_enumerate(p, eo);
          return std::pair{out, root_residual(form, out)};
        });
  }
  if (name == "legacy-mlcp") {
    return measure(
        cfg, form, name, "enumeration",
        [&] { return square ? build_root_mlcp_legacy(form) : std::nullopt; },
        [&](const LegacyRootMlcp& p) {
          SolveOutcome out = solve_mlcp_enumerate(p.mlcp, eo);
          if (out.solved()) out.x = p.recover(*out.x, *out.w);
          return std::pair{out, root_residual(form, out)};
        });
  }
  if (name == "legacy-lcp") {
    return measure(
        cfg, form, name, "lemke",
        [&] { return square ? build_root_lcp_legacy(form) : std::nullopt; },
        [&](const LegacyRootLcp& p) {
          SolveOutcome out = solve_lcp_lemke(p.lcp, 0, eo.tol);
          if (out.solved()) out.x = p.recover(*out.w);
          return std::pair{out, root_residual(form, out)};
        });
  }
  if (name == "lpcc" || name == "milp") {
    const bool milp = name == "milp";
    auto gap = [&](const SolveOutcome& out) {
      if (!out.solved() || !out.x || !out.objective) return std::nan("");
      return std::abs(*out.objective - evaluate(form, *out.x)[0]);
    };
    if (milp) {
      return measure(
          cfg, form, name, "branch-and-bound",
          [&] {
            return scalar ? std::optional(build_min_milp(build_min_lpcc(form), cfg.mu))
                          : std::nullopt;
          },
          [&](const MilpProblem& p) {
            SolveOutcome out = solve_milp_bb(p);
            return std::pair{out, gap(out)};
          });
    }
    return measure(
        cfg, form, name, "enumeration",
        [&] { return scalar ? std::optional(build_min_lpcc(form)) : std::nullopt; },
        [&](const LpccProblem& p) {
          SolveOutcome out = solve_lpcc_enumerate(p, eo);
          return std::pair{out, gap(out)};
        });
  }
  if (name == "exists") {
    return measure(
        cfg, form, name, "enumeration",
        [&] { return scalar ? std::optional(build_existence_mlcp(form)) : std::nullopt; },
        [&](const MlcpProblem& p) {
          SolveOutcome out = solve_mlcp_enumerate(p, eo);
          const double r = out.solved() ? norm_inf(p.equality_residual(*out.x, *out.w)) : 0.0;
          return std::pair{out, r};
        });
  }
  throw std::invalid_argument("unknown formulation: " + name);
}

}  // namespace

std::optional<BenchPreset> parse_bench_preset(std::string_view name) {
  if (name == "example63") return BenchPreset::kExample63;
  if (name == "example64") return BenchPreset::kExample64;
  if (name == "nested") return BenchPreset::kNested;
  return std::nullopt;
}

const std::vector<std::string>& bench_formulations() {
  static const std::vector<std::string> names{"aux",         "lcp",        "lcp-enum",
                                              "mlcp",        "legacy-mlcp", "legacy-lcp",
                                              "lpcc",        "milp",       "exists"};
  return names;
}

std::vector<std::string> default_bench_formulations(BenchPreset preset) {
  if (preset == BenchPreset::kNested) return {"aux", "lpcc", "milp"};
  return {"aux", "lcp", "mlcp"};
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  const auto& known = bench_formulations();
  for (const auto& f : cfg.formulations)
    if (std::find(known.begin(), known.end(), f) == known.end())
      throw std::invalid_argument("unknown formulation: " + f);
  std::vector<BenchRecord> rows;
  rows.reserve(cfg.n_list.size() * cfg.formulations.size() * cfg.reps);
  for (std::size_t n : cfg.n_list) {
    std::vector<AbsNormalForm> forms;
    for (std::size_t r = 0; r < cfg.reps; ++r) forms.push_back(instance(cfg, n, r));
    for (const auto& f : cfg.formulations)
      for (std::size_t r = 0; r < cfg.reps; ++r) rows.push_back(run_one(cfg, forms[r], f));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  const auto old = out.precision(9);
  for (const auto& r : records) {
    out << r.n << ',' << r.formulation << ',' << r.solver << ',' << r.build_time_s << ','
        << r.solve_time_s << ',' << r.status << ',' << r.residual << '\n';
  }
  out.precision(old);
}

}  // namespace absnorm
