#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "absnorm/analysis.h"
#include "absnorm/bench.h"
#include "absnorm/io.h"

using namespace absnorm;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kIndeterminate = 3 };

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw std::invalid_argument("not a real number: \"" + item + "\"");
    out.push_back(v);
  }
  return out;
}

// "2,4,8" or "2..16" or a mix such as "2..4,8".
std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto to_size = [](const std::string& s) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad n-list entry: " + s);
    return static_cast<std::size_t>(v);
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_size(item));
      continue;
    }
    const std::size_t lo = to_size(item.substr(0, dots));
    const std::size_t hi = to_size(item.substr(dots + 2));
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw std::invalid_argument("empty n-list");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json outcome_json(const SolveOutcome& o) {
  Json j;
  j["status"] = std::string(to_string(o.status));
  if (o.x) j["x"] = *o.x;
  if (o.w) j["w"] = *o.w;
  if (o.y) j["y"] = *o.y;
  if (o.objective) j["objective"] = *o.objective;
  if (o.ray) j["ray"] = *o.ray;
  j["certificate"] = o.certificate;
  j["iterations"] = o.iterations;
  return j;
}

Json report_json(const PipelineReport& r) {
  Json j;
  j["formulation"] = r.formulation;
  j["solver"] = r.solver;
  j["nonsingular"] = Json::object();
  for (const auto& [k, v] : r.nonsingular) j["nonsingular"][k] = v;
  j["outcome"] = outcome_json(r.outcome);
  j["residuals"] = Json::object();
  for (const auto& [k, v] : r.residuals) j["residuals"][k] = v;
  j["verified"] = r.verified;
  j["wall_time_s"] = r.wall_time_s;
  if (r.existence) {
    j["existence"] = std::string(to_string(*r.existence));
    j["existence_certificate"] = r.existence_certificate;
  }
  return j;
}

void print_report(const PipelineReport& r) {
  const SolveOutcome& o = r.outcome;
  std::cout << "formulation: " << r.formulation << '\n';
  std::cout << "solver: " << r.solver << '\n';
  for (const auto& [k, v] : r.nonsingular)
    std::cout << "nonsingular " << k << ": " << (v ? "true" : "false") << '\n';
  if (r.existence)
    std::cout << "existence: " << to_string(*r.existence) << " (" << r.existence_certificate
              << ")\n";
  std::cout << "status: " << to_string(o.status) << '\n';
  if (o.x) std::cout << "x: " << to_string(*o.x) << '\n';
  if (o.w) std::cout << "w: " << to_string(*o.w) << '\n';
  if (o.objective) std::cout << "objective: " << num(*o.objective) << '\n';
  if (o.ray) std::cout << "direction: " << to_string(*o.ray) << '\n';
  for (const auto& [k, v] : r.residuals) std::cout << "residual " << k << ": " << num(v) << '\n';
  std::cout << "certificate: " << o.certificate << '\n';
  std::cout << "verified: " << (r.verified ? "true" : "false") << '\n';
  std::cout << "wall_time_s: " << num(r.wall_time_s) << '\n';
}

PipelineOptions pipeline_options() {
  PipelineOptions opt;
  opt.enumeration.limit = enumeration_limit_from_env();
  return opt;
}

int cmd_eval(const std::string& file, const std::string& xs, bool json) {
  const AbsNormalForm form = read_anf_file(file);
  const Vector x = xs.empty() && form.n() == 0 ? Vector{} : parse_reals(xs);
  if (x.size() != form.n())
    throw DimensionError("x has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(form.n()));
  const Vector z = switching_vector(form, x);
  const Vector f = evaluate(form, x);
  Vector az(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) az[i] = std::abs(z[i]);
  if (json) {
    std::cout << Json{{"f", f}, {"z", z}, {"abs_z", az}}.dump(2) << '\n';
  } else {
    std::cout << "f: " << to_string(f) << '\n'
              << "z: " << to_string(z) << '\n'
              << "|z|: " << to_string(az) << '\n';
  }
  return kOk;
}

int cmd_root(const std::string& file, const std::string& strategy_name, double tol, bool json,
             const std::string& dump) {
  const AbsNormalForm form = read_anf_file(file);
  const auto strategy = parse_root_strategy(strategy_name);
  if (!strategy) throw CLI::ValidationError("--strategy", "unknown strategy " + strategy_name);
  PipelineOptions opt = pipeline_options();
  opt.root_tol = tol;
  PipelineReport report;
  try {
    report = root_pipeline(form, *strategy, opt);
  } catch (const ShapeError& e) {
    throw PreconditionError(e.what());
  }
  if (!dump.empty()) {
    Json problem;
    if (report.formulation == "root-lcp") problem = to_json(build_root_lcp(form)->lcp);
    else if (report.formulation == "legacy-mlcp") problem = to_json(build_root_mlcp_legacy(form)->mlcp);
    else if (report.formulation == "legacy-lcp") problem = to_json(build_root_lcp_legacy(form)->lcp);
    else problem = to_json(build_root_mlcp(form));
    write_text_file(dump, problem.dump(2) + "\n");
  }
  if (json) std::cout << report_json(report).dump(2) << '\n';
  else print_report(report);
  if (report.outcome.solved()) return report.verified ? kOk : kIndeterminate;
  if (report.outcome.status == SolveStatus::kNoSolutionProved) return kNegative;
  return kIndeterminate;
}

int cmd_minimize(const std::string& file, const std::string& method_name, double mu,
                 bool skip_existence, bool json, const std::string& dump) {
  const AbsNormalForm form = read_anf_file(file);
  const auto method = parse_minimize_method(method_name);
  if (!method) throw CLI::ValidationError("--method", "unknown method " + method_name);
  if (form.m() != 1) throw ShapeError("minimization requires m = 1");
  PipelineOptions opt = pipeline_options();
  opt.mu = mu;
  if (!dump.empty()) {
    const LpccProblem lpcc = build_min_lpcc(form);
    const Json problem = *method == MinimizeMethod::kLpcc ? to_json(lpcc)
                                                           : to_json(build_min_milp(lpcc, mu));
    write_text_file(dump, problem.dump(2) + "\n");
  }
  const PipelineReport report = minimize_pipeline(form, *method, !skip_existence, opt);
  if (json) std::cout << report_json(report).dump(2) << '\n';
  else print_report(report);
  switch (report.outcome.status) {
    case SolveStatus::kSolved:
      return report.verified ? kOk : kIndeterminate;
    case SolveStatus::kUnbounded:
    case SolveStatus::kInfeasible:
      return kNegative;
    default:
      return kIndeterminate;
  }
}

int cmd_exists_min(const std::string& file, bool json) {
  const AbsNormalForm form = read_anf_file(file);
  EnumerationOptions eo;
  eo.limit = enumeration_limit_from_env();
  const ExistenceReport r = existence_of_minimum(form, eo);
  const char* verdict = r.verdict == Existence::kExists      ? "minimum exists"
                        : r.verdict == Existence::kNotExists ? "no minimum"
                                                             : "indeterminate";
  if (json) {
    std::cout << Json{{"verdict", std::string(to_string(r.verdict))},
                      {"outcome", outcome_json(r.outcome)},
                      {"wall_time_s", r.wall_time_s}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << verdict << '\n';
    std::cout << "existence system: " << to_string(r.outcome.status) << " ("
              << r.outcome.certificate << ")\n";
    if (r.outcome.x) std::cout << "descent direction: " << to_string(*r.outcome.x) << '\n';
  }
  switch (r.verdict) {
    case Existence::kExists:
      return kOk;
    case Existence::kNotExists:
      return kNegative;
    case Existence::kIndeterminate:
      break;
  }
  return kIndeterminate;
}

int cmd_check(const std::string& file, bool json) {
  const AbsNormalForm form = read_anf_file(file);
  Json j;
  j["n"] = form.n();
  j["m"] = form.m();
  j["s"] = form.s();
  j["simply_switched"] = is_simply_switched(form);
  const AuxiliaryQuantities aux = auxiliary(form);
  if (form.m() == form.n()) {
    const bool j_ok = !lu_factor(form.J()).singular();
    j["J_nonsingular"] = j_ok;
    j["J_aux_nonsingular"] = !lu_factor(aux.J).singular();
    if (j_ok) {
      const auto legacy = build_root_mlcp_legacy(form);
      Matrix ims = matsub(Matrix::identity(form.s()), legacy->S);
      j["I_minus_S_nonsingular"] = !lu_factor(ims).singular();
    }
    if (const auto red = reduced(form, aux)) {
      j["S"] = to_json(red->S);
      if (red->S.rows() <= kPMatrixLimit) j["S_p_matrix"] = is_p_matrix(red->S);
      j["S_pd_sufficient"] = is_positive_definite_sufficient(red->S);
    }
  }
  if (json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  auto flag = [&](const char* key, const char* label) {
    if (j.contains(key)) std::cout << label << ": " << (j[key].get<bool>() ? "true" : "false") << '\n';
    else std::cout << label << ": n/a\n";
  };
  std::cout << "n: " << form.n() << "  m: " << form.m() << "  s: " << form.s() << '\n';
  flag("simply_switched", "simply switched");
  flag("J_nonsingular", "J nonsingular");
  flag("J_aux_nonsingular", "J_aux nonsingular");
  flag("I_minus_S_nonsingular", "I - S nonsingular");
  flag("S_p_matrix", "reduced S P-matrix");
  flag("S_pd_sufficient", "reduced S positive definite (sufficient)");
  return kOk;
}

int cmd_gen(const std::string& preset, std::size_t n, std::uint64_t seed, const std::string& out) {
  if (n < 1) throw std::invalid_argument("--n must be at least 1");
  AbsNormalForm form;
  if (preset == "example63") form = random_instance(n, seed, InstancePreset::kExample63);
  else if (preset == "example64") form = random_instance(n, seed, InstancePreset::kExample64);
  else if (preset == "nested") form = nested_abs_instance(n);
  else throw CLI::ValidationError("--preset", "unknown preset " + preset);
  const std::string text = serialize_anf(form);
  if (out.empty()) std::cout << text;
  else write_text_file(out, text);
  return kOk;
}

int cmd_bench(const std::string& preset, const std::string& n_list, std::size_t reps,
              const std::string& formulations, std::uint64_t seed, const std::string& out) {
  BenchConfig cfg;
  const auto p = parse_bench_preset(preset);
  if (!p) throw CLI::ValidationError("--preset", "unknown preset " + preset);
  cfg.preset = *p;
  cfg.n_list = parse_n_list(n_list);
  cfg.reps = reps;
  cfg.seed = seed;
  cfg.formulations = formulations.empty() ? default_bench_formulations(*p) : split(formulations);
  cfg.enumeration.limit = enumeration_limit_from_env();
  const auto rows = run_bench(cfg);
  if (out.empty()) {
    write_bench_csv(std::cout, rows);
    return kOk;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << '\n';
    return kIndeterminate;
  }
  write_bench_csv(f, rows);
  if (!f) {
    std::cerr << "error: write failed: " << out << '\n';
    return kIndeterminate;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abs-normal form toolkit: evaluation, roots, minimization, existence"};
  app.require_subcommand(1);
  bool json = false;
  std::string file, xs, strategy = "auto", method = "milp", preset = "example63", out, dump;
  std::string n_list = "2..16", formulations;
  double tol = 1e-6, mu = kDefaultBigM;
  bool skip_existence = false;
  std::size_t n = 0, reps = 10;
  std::uint64_t seed = 1;

  auto* eval = app.add_subcommand("eval", "Evaluate f(x) and the switching vector");
  eval->add_option("file", file, "Abs-normal form JSON")->required();
  eval->add_option("x,--x", xs, "Comma-separated point");
  eval->add_flag("--json", json);

  auto* root = app.add_subcommand("root", "Find a root of f");
  root->add_option("file", file)->required();
  root->add_option("--strategy", strategy, "auto|mlcp|lcp|legacy-mlcp|legacy-lcp");
  root->add_option("--tol", tol, "Residual tolerance on f(x)");
  root->add_option("--dump-problem", dump, "Write the built problem as JSON");
  root->add_flag("--json", json);

  auto* minimize = app.add_subcommand("minimize", "Globally minimize scalar f");
  minimize->add_option("file", file)->required();
  minimize->add_option("--method", method, "lpcc|milp");
  minimize->add_option("--mu", mu, "Big-M constant");
  minimize->add_flag("--skip-existence", skip_existence);
  minimize->add_option("--dump-problem", dump, "Write the built problem as JSON");
  minimize->add_flag("--json", json);

  auto* exists = app.add_subcommand("exists-min", "Certify existence of a global minimum");
  exists->add_option("file", file)->required();
  exists->add_flag("--json", json);

  auto* check = app.add_subcommand("check", "Nonsingularity and matrix-class report");
  check->add_option("file", file)->required();
  check->add_flag("--json", json);

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--preset", preset, "example63|example64|nested");
  gen->add_option("--n", n)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  auto* bench = app.add_subcommand("bench", "Scaling benchmark CSV");
  bench->add_option("--preset", preset, "example63|example64|nested");
  bench->add_option("--n-list", n_list, "e.g. 2,4,8 or 2..16");
  bench->add_option("--reps", reps);
  bench->add_option("--formulations", formulations,
                    "aux,lcp,lcp-enum,mlcp,legacy-mlcp,legacy-lcp,lpcc,milp,exists");
  bench->add_option("--seed", seed);
  bench->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(file, xs, json);
    if (*root) return cmd_root(file, strategy, tol, json, dump);
    if (*minimize) return cmd_minimize(file, method, mu, skip_existence, json, dump);
    if (*exists) return cmd_exists_min(file, json);
    if (*check) return cmd_check(file, json);
    if (*gen) return cmd_gen(preset, n, seed, out);
    if (*bench) return cmd_bench(preset, n_list, reps, formulations, seed, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIndeterminate;
  }
  return kUsage;
}
