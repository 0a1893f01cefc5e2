#pragma once

#include "qavg/config.hpp"
#include "qavg/csv.hpp"
#include "qavg/extremizers.hpp"

namespace qavg {

/// Outcome of one experiment command: the CSV table plus the list of failed
/// mathematical checks (reportable data, not usage errors).
struct RunResult {
  bool ok = true;
  std::vector<std::string> failures;
  Table table;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

/// Orthogonality, Plancherel, round-trip, delta_0^ == 1, fast-vs-naive.
RunResult run_verify_fourier(const ExperimentConfig& cfg);

/// Point counts (enumeration vs closed form), the Gauss-sum closed form for
/// (d sigma)^vee against the direct sum, and the decay two-sidedness table.
RunResult run_verify_sigma(const ExperimentConfig& cfg);

/// Kernel-norm lemma certification sweeps (per-regime random sets plus the
/// deterministic set families) and kernel identities.
RunResult run_verify_kernel_bounds(const ExperimentConfig& cfg);

/// Critical-vertex averaging battery across q_list.
RunResult run_verify_averaging(const ExperimentConfig& cfg);

/// Extremizer growth-slope probe at an exponent pair outside the region.
RunResult run_sharpness(const ExperimentConfig& cfg, const RatPoint& point);

/// Alternating-sign pattern 1, -1, 1, -1, ...; hyperbolic for every q.
std::vector<std::int64_t> hyperbolic_pattern(int d);

/// Smallest pattern (1, ..., 1, c) that fails the hyperbolicity test over f.
std::vector<std::int64_t> elliptic_pattern(const Field& f, int d);

/// Critical exponent pair (p, r) of the main averaging theorem.
std::pair<double, double> critical_exponents(int d);

}  // namespace qavg
