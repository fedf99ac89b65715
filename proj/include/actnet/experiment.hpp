#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "actnet/mitigation.hpp"

namespace actnet {

enum class Metric { R1, R2 };

const char* metric_name(Metric metric);
Metric metric_from_name(const std::string& name);

struct SweepConfig {
  std::vector<double> q0_grid;
  std::vector<double> tau_grid;
  std::vector<double> gamma_grid;
  std::vector<MitigationScheme> schemes;
  int n_runs = 100;
  std::uint64_t master_seed = 0;
  // R1 defaults to the ratio of per-seed run-means; this switches to the
  // mean of per-run ratios instead.
  bool per_run_ratio = false;
  // Drop seeds with an empty out-component from the seed averages.
  bool exclude_empty_seeds = false;
  int threads = 0;  // 0 = all hardware threads

  void validate() const;
};

struct CellResult {
  SchemeKind scheme = SchemeKind::OutDegree;
  DateOrder date_order = DateOrder::LatestFirst;
  double q0 = 0.0;
  double tau_tilde = 1.0;
  double gamma = 0.0;
  double r1 = 1.0;
  double r2 = 1.0;
  // Delta-method standard errors. The paired values account for the
  // common random numbers shared by the two conditions; the unpaired
  // values are the errors the same run counts would give with
  // independent streams, the scale on which a ratio is "statistically
  // indistinguishable from 1".
  double r1_sigma = 0.0;
  double r2_sigma = 0.0;
  double r1_sigma_unpaired = 0.0;
  double r2_sigma_unpaired = 0.0;
  double mitigated_mean = 1.0;    // seed-averaged mean cascade size
  double unmitigated_mean = 1.0;
  int n_runs = 0;
  std::uint64_t master_seed = 0;
};

struct ResultsTable {
  std::vector<CellResult> rows;
};

// Mean over seeds of (mitigated mean size / unmitigated mean size), with
// common random numbers pairing run k of both conditions on stream
// (master_seed, seed, k).
double compute_R1(const ActivityNetwork& net, const MitigationScheme& scheme,
                  const CascadeParams& params, double gamma, int n_runs,
                  std::uint64_t master_seed);

// (Mean mitigated size over seeds) / (mean unmitigated size over seeds),
// same pairing.
double compute_R2(const ActivityNetwork& net, const MitigationScheme& scheme,
                  const CascadeParams& params, double gamma, int n_runs,
                  std::uint64_t master_seed);

// Full cell evaluation, exposing the sigma estimates used by tests.
CellResult evaluate_cell(const ActivityNetwork& net,
                         const MitigationScheme& scheme,
                         const CascadeParams& params, double gamma, int n_runs,
                         std::uint64_t master_seed, bool per_run_ratio = false,
                         bool exclude_empty_seeds = false);

// One row per (scheme, q0, tau_tilde, gamma). Row order: tau, then q0,
// then gamma, then scheme, following the config grids. Deterministic for
// a given master_seed on any thread count.
ResultsTable sweep(const ActivityNetwork& net, const SweepConfig& config);

// Straightforward implementation on the public per-network operations
// (apply_mitigation + run_cascade on whole networks). Slow; kept as the
// reference the optimized path is tested against bit-for-bit.
ResultsTable sweep_reference(const ActivityNetwork& net,
                             const SweepConfig& config);

struct BestCell {
  double tau_tilde = 1.0;
  double q0 = 0.0;
  double gamma = 0.0;
  std::optional<SchemeKind> winner;  // empty = Unspecified
};

struct BestSchemeMap {
  Metric metric = Metric::R1;
  double threshold = 0.01;
  std::vector<BestCell> cells;
};

// Per (tau, q0, gamma) cell, the scheme with the smallest metric value,
// or Unspecified when (worst - best) / worst < threshold. Ties are broken
// by scheme enum order. Throws IncompleteTable if any cell is missing a
// scheme or fewer than two schemes are present.
BestSchemeMap best_scheme_map(const ResultsTable& table, Metric metric,
                              double threshold = 0.01);

// CSV round-trip. Header: metric,scheme,q0,tau_tilde,gamma,value,n_runs,
// master_seed. Each cell emits R1, R2, mitigated_mean and
// unmitigated_mean rows. Doubles use shortest round-trip formatting.
void write_results_csv(std::ostream& out, const ResultsTable& table);
ResultsTable read_results_csv(std::istream& in);

// Header: metric,tau_tilde,q0,gamma,best_scheme (UNSPECIFIED literal).
void write_bestmap_csv(std::ostream& out, const BestSchemeMap& map);

}  // namespace actnet
