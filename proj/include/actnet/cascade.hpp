#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "actnet/rng.hpp"
#include "actnet/schedule.hpp"

namespace actnet {

struct CascadeParams {
  double q0 = 0.0;         // propagation probability at zero float
  double tau_tilde = 1.0;  // float-sensitivity scale, days

  void validate() const;
};

struct CascadeOutcome {
  int seed = -1;
  std::vector<std::uint8_t> states;  // 1 = affected, by dense node index
  int size = 0;                      // affected count, seed included
};

// Eq. probability that a failure crosses an edge with free float tau:
// q0 * exp(-tau / tau_tilde). Throws Domain for negative tau.
double propagation_probability(const CascadeParams& params, int tau);

// Probability that a node fails given its upstream neighbours'
// (state, edge probability) pairs: 1 - prod[(1 - s_i) + s_i (1 - p_ij)].
double node_failure_probability(
    std::span<const std::pair<int, double>> upstream);

// Reference implementation: marks every node of the network in
// topological order and draws one uniform per node. The draw for a node
// is addressed by its dense index, so the outcome is identical for any
// valid marking order.
CascadeOutcome run_cascade(const ActivityNetwork& net, int seed,
                           const CascadeParams& params,
                           const RngStream& stream);
CascadeOutcome run_cascade(const ActivityNetwork& net, const std::string& seed,
                           const CascadeParams& params,
                           const RngStream& stream);

// Mean affected-set size over runs 0..n_runs-1, each on stream
// (master_seed, seed, run). Deterministic given master_seed.
double mean_cascade_size(const ActivityNetwork& net, int seed,
                         const CascadeParams& params, int n_runs,
                         std::uint64_t master_seed);

// Exhaustive bond-percolation oracle: enumerates every live/dead
// configuration of the edges inside the seed's out-component and weights
// reachable-set sizes by configuration probability. Limited to 20 edges;
// throws Capacity beyond that.
double exact_cascade_expectation(const ActivityNetwork& net, int seed,
                                 const CascadeParams& params);

inline constexpr int kExactEnumerationMaxEdges = 20;

// ---------------------------------------------------------------------
// Optimized per-seed kernel used by the sweep machinery. Only the seed's
// out-component can ever fail, so runs operate on a compact local
// subgraph with local day stamps that mitigation may shift per run.

struct SeedPlan {
  int seed = -1;              // global dense index
  std::vector<int> nodes;     // local -> global; nodes[0] == seed; topo order
  std::vector<int> in_off, in_src;    // local CSR: upstream neighbours
  std::vector<int> out_off, out_dst;  // local CSR: downstream neighbours
  std::vector<int> base_start, base_end;  // unmitigated local day stamps

  int component_size() const { return static_cast<int>(nodes.size()) - 1; }
};

SeedPlan make_seed_plan(const ActivityNetwork& net, int seed);

// exp(-tau / tau_tilde) for integer tau in [0, max_tau].
std::vector<double> exp_table(double tau_tilde, int max_tau);

// One run on the plan with the given (possibly mitigated) local times.
// failed must have room for nodes.size() entries. Returns the affected
// count including the seed. Bit-identical to run_cascade on the same
// network and stream.
int run_cascade_on_plan(const SeedPlan& plan, std::span<const int> lstart,
                        std::span<const int> lend, double q0,
                        std::span<const double> exp_tab,
                        const RngStream& stream, std::span<std::uint8_t> failed);

}  // namespace actnet
