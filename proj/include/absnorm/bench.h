#pragma once

// Scaling benchmark over generated instances, one record per
// (n, formulation, repetition).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absnorm/solvers.h"

namespace absnorm {

enum class BenchPreset { kExample63, kExample64, kNested };
std::optional<BenchPreset> parse_bench_preset(std::string_view name);

/// aux, lcp, lcp-enum, mlcp, legacy-mlcp, legacy-lcp, lpcc, milp, exists.
const std::vector<std::string>& bench_formulations();
std::vector<std::string> default_bench_formulations(BenchPreset preset);

struct BenchRecord {
  std::size_t n = 0;
  std::string formulation;
  std::string solver;
  double build_time_s = 0.0;
  double solve_time_s = 0.0;
  std::string status;
  double residual = 0.0;
};

struct BenchConfig {
  BenchPreset preset = BenchPreset::kExample63;
  std::vector<std::size_t> n_list;
  std::size_t reps = 10;
  std::vector<std::string> formulations;
  std::uint64_t seed = 1;  // repetition r of size n uses seed + 1000 n + r
  EnumerationOptions enumeration;
  double mu = 1e5;
  double verify_tol = 1e-6;
};

/// Rows ordered by n, then formulation as listed, then repetition.  Throws
/// std::invalid_argument on an unknown formulation name.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

inline constexpr std::string_view kBenchCsvHeader =
    "n,formulation,solver,build_time_s,solve_time_s,status,residual";

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace absnorm
