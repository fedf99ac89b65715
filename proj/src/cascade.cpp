#include "actnet/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace actnet {

void CascadeParams::validate() const {
  if (!(q0 >= 0.0 && q0 <= 1.0)) {
    throw Error(ErrorKind::Domain,
                "q0 must be in [0, 1], got " + std::to_string(q0));
  }
  if (!(tau_tilde > 0.0)) {
    throw Error(ErrorKind::Domain,
                "tau_tilde must be positive, got " + std::to_string(tau_tilde));
  }
}

double propagation_probability(const CascadeParams& params, int tau) {
  params.validate();
  if (tau < 0) {
    throw Error(ErrorKind::Domain,
                "negative free float " + std::to_string(tau));
  }
  return params.q0 * std::exp(-static_cast<double>(tau) / params.tau_tilde);
}

double node_failure_probability(
    std::span<const std::pair<int, double>> upstream) {
  double survive = 1.0;
  for (const auto& [state, p] : upstream) {
    if (state != 0 && state != 1) {
      throw Error(ErrorKind::Domain,
                  "upstream state must be 0 or 1, got " + std::to_string(state));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::Domain,
                  "edge probability outside [0, 1]: " + std::to_string(p));
    }
    survive *= (1.0 - state) + state * (1.0 - p);
  }
  return 1.0 - survive;
}

CascadeOutcome run_cascade(const ActivityNetwork& net, int seed,
                           const CascadeParams& params,
                           const RngStream& stream) {
  params.validate();
  if (seed < 0 || seed >= net.node_count()) {
    throw Error(ErrorKind::Lookup, "seed index out of range");
  }
  CascadeOutcome out;
  out.seed = seed;
  out.states.assign(net.node_count(), 0);
  out.states[seed] = 1;
  out.size = 1;
  for (int j : net.topological_order()) {
    if (j == seed) continue;
    double survive = 1.0;
    for (int i : net.in_neighbors(j)) {
      if (out.states[i]) {
        survive *= 1.0 - propagation_probability(params, net.free_float(i, j));
      }
    }
    const double fail_p = 1.0 - survive;
    if (fail_p > 0.0 &&
        stream.uniform(RngStream::kCascade, static_cast<std::uint32_t>(j)) <
            fail_p) {
      out.states[j] = 1;
      ++out.size;
    }
  }
  return out;
}

CascadeOutcome run_cascade(const ActivityNetwork& net, const std::string& seed,
                           const CascadeParams& params,
                           const RngStream& stream) {
  return run_cascade(net, net.index_of(seed), params, stream);
}

double mean_cascade_size(const ActivityNetwork& net, int seed,
                         const CascadeParams& params, int n_runs,
                         std::uint64_t master_seed) {
  if (n_runs < 1) {
    throw Error(ErrorKind::Domain, "n_runs must be >= 1");
  }
  long long total = 0;
  for (int run = 0; run < n_runs; ++run) {
    RngStream stream(master_seed, static_cast<std::uint32_t>(seed),
                     static_cast<std::uint32_t>(run));
    total += run_cascade(net, seed, params, stream).size;
  }
  return static_cast<double>(total) / n_runs;
}

double exact_cascade_expectation(const ActivityNetwork& net, int seed,
                                 const CascadeParams& params) {
  params.validate();
  const std::vector<int> component = net.out_component(seed);
  std::vector<int> members{seed};
  members.insert(members.end(), component.begin(), component.end());
  std::vector<int> local(net.node_count(), -1);
  for (int i = 0; i < static_cast<int>(members.size()); ++i) {
    local[members[i]] = i;
  }

  struct SubEdge {
    int src, dst;
    double p;
  };
  std::vector<SubEdge> edges;
  for (int g : members) {
    for (int dst : net.out_neighbors(g)) {
      if (local[dst] >= 0) {
        edges.push_back({local[g], local[dst],
                         propagation_probability(params, net.free_float(g, dst))});
      }
    }
  }
  if (static_cast<int>(edges.size()) > kExactEnumerationMaxEdges) {
    throw Error(ErrorKind::Capacity,
                "out-component has " + std::to_string(edges.size()) +
                    " edges, enumeration bound is " +
                    std::to_string(kExactEnumerationMaxEdges));
  }

  const int m = static_cast<int>(members.size());
  const int e = static_cast<int>(edges.size());
  double expectation = 0.0;
  std::vector<char> reach(m);
  std::vector<int> stack;
  for (std::uint64_t mask = 0; mask < (1ull << e); ++mask) {
    double prob = 1.0;
    for (int b = 0; b < e; ++b) {
      prob *= (mask >> b & 1) ? edges[b].p : 1.0 - edges[b].p;
    }
    if (prob == 0.0) continue;
    std::fill(reach.begin(), reach.end(), 0);
    reach[0] = 1;
    stack.assign(1, 0);
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int b = 0; b < e; ++b) {
        if ((mask >> b & 1) && edges[b].src == u && !reach[edges[b].dst]) {
          reach[edges[b].dst] = 1;
          ++count;
          stack.push_back(edges[b].dst);
        }
      }
    }
    expectation += prob * count;
  }
  return expectation;
}

SeedPlan make_seed_plan(const ActivityNetwork& net, int seed) {
  SeedPlan plan;
  plan.seed = seed;
  const std::vector<int> component = net.out_component(seed);
  std::vector<char> member(net.node_count(), 0);
  member[seed] = 1;
  for (int g : component) member[g] = 1;

  plan.nodes.push_back(seed);
  for (int g : net.topological_order()) {
    if (member[g] && g != seed) plan.nodes.push_back(g);
  }
  std::vector<int> local(net.node_count(), -1);
  for (int i = 0; i < static_cast<int>(plan.nodes.size()); ++i) {
    local[plan.nodes[i]] = i;
  }

  const int m = static_cast<int>(plan.nodes.size());
  plan.in_off.assign(m + 1, 0);
  plan.out_off.assign(m + 1, 0);
  plan.base_start.resize(m);
  plan.base_end.resize(m);
  for (int i = 0; i < m; ++i) {
    const int g = plan.nodes[i];
    plan.base_start[i] = net.start_day(g);
    plan.base_end[i] = net.end_day(g);
    for (int src : net.in_neighbors(g)) {
      if (local[src] >= 0) ++plan.in_off[i + 1];
    }
    for (int dst : net.out_neighbors(g)) {
      if (local[dst] >= 0) ++plan.out_off[i + 1];
    }
  }
  for (int i = 0; i < m; ++i) {
    plan.in_off[i + 1] += plan.in_off[i];
    plan.out_off[i + 1] += plan.out_off[i];
  }
  plan.in_src.resize(plan.in_off[m]);
  plan.out_dst.resize(plan.out_off[m]);
  std::vector<int> in_cur(plan.in_off.begin(), plan.in_off.end() - 1);
  std::vector<int> out_cur(plan.out_off.begin(), plan.out_off.end() - 1);
  for (int i = 0; i < m; ++i) {
    const int g = plan.nodes[i];
    for (int src : net.in_neighbors(g)) {
      if (local[src] >= 0) plan.in_src[in_cur[i]++] = local[src];
    }
    for (int dst : net.out_neighbors(g)) {
      if (local[dst] >= 0) plan.out_dst[out_cur[i]++] = local[dst];
    }
  }
  return plan;
}

std::vector<double> exp_table(double tau_tilde, int max_tau) {
  std::vector<double> table(max_tau + 1);
  for (int tau = 0; tau <= max_tau; ++tau) {
    table[tau] = std::exp(-static_cast<double>(tau) / tau_tilde);
  }
  return table;
}

int run_cascade_on_plan(const SeedPlan& plan, std::span<const int> lstart,
                        std::span<const int> lend, double q0,
                        std::span<const double> exp_tab,
                        const RngStream& stream,
                        std::span<std::uint8_t> failed) {
  const int m = static_cast<int>(plan.nodes.size());
  failed[0] = 1;
  int size = 1;
  for (int j = 1; j < m; ++j) {
    double survive = 1.0;
    for (int k = plan.in_off[j]; k < plan.in_off[j + 1]; ++k) {
      const int i = plan.in_src[k];
      if (failed[i]) {
        const int tau = std::max(0, lstart[j] - lend[i]);
        survive *= 1.0 - q0 * exp_tab[tau];
      }
    }
    const double fail_p = 1.0 - survive;
    std::uint8_t f = 0;
    if (fail_p > 0.0) {
      f = stream.uniform(RngStream::kCascade,
                         static_cast<std::uint32_t>(plan.nodes[j])) < fail_p;
    }
    failed[j] = f;
    size += f;
  }
  return size;
}

}  // namespace actnet
