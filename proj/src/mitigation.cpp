#include "actnet/mitigation.hpp"

#include <algorithm>
#include <cmath>

namespace actnet {

namespace {

constexpr const char* kSchemeNames[kSchemeCount] = {
    "out-degree", "out-component", "duration", "start-date", "end-date",
    "random"};

bool larger_score_first(const MitigationScheme& scheme) {
  switch (scheme.kind) {
    case SchemeKind::StartDate:
    case SchemeKind::EndDate:
      return scheme.date_order == DateOrder::LatestFirst;
    default:
      return true;  // larger degree/component/duration/random value first
  }
}

double score_of(const MitigationScheme& scheme, const ActivityNetwork& net,
                std::span<const int> out_component_size, int node,
                const RngStream& stream) {
  switch (scheme.kind) {
    case SchemeKind::OutDegree:
      return net.out_degree(node);
    case SchemeKind::OutComponentSize:
      return out_component_size.empty()
                 ? static_cast<double>(net.out_component(node).size())
                 : out_component_size[node];
    case SchemeKind::Duration:
      return net.duration(node);
    case SchemeKind::StartDate:
      return net.start_day(node);
    case SchemeKind::EndDate:
      return net.end_day(node);
    case SchemeKind::Random:
      return stream.uniform(RngStream::kScore,
                            static_cast<std::uint32_t>(node));
  }
  return 0.0;
}

void sort_entries(std::vector<RankEntry>& entries, bool larger_first) {
  std::sort(entries.begin(), entries.end(),
            [larger_first](const RankEntry& a, const RankEntry& b) {
              if (a.primary != b.primary) {
                return larger_first ? a.primary > b.primary
                                    : a.primary < b.primary;
              }
              if (a.tie != b.tie) return a.tie < b.tie;
              return a.index < b.index;
            });
}

}  // namespace

void MitigationConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorKind::Domain,
                "gamma must be in [0, 1], got " + std::to_string(gamma));
  }
}

const char* scheme_name(SchemeKind kind) {
  return kSchemeNames[static_cast<int>(kind)];
}

SchemeKind scheme_from_name(const std::string& name) {
  for (int i = 0; i < kSchemeCount; ++i) {
    if (name == kSchemeNames[i]) return static_cast<SchemeKind>(i);
  }
  throw Error(ErrorKind::Config, "unknown scheme '" + name + "'");
}

int mitigated_count(double gamma, int n) {
  return static_cast<int>(std::floor(gamma * n + 0.5));
}

RankedSet score_nodes(const ActivityNetwork& net, std::span<const int> nodes,
                      const MitigationScheme& scheme,
                      const RngStream& stream) {
  std::vector<RankEntry> entries;
  entries.reserve(nodes.size());
  for (int node : nodes) {
    entries.push_back(
        {score_of(scheme, net, {}, node, stream),
         stream.bits(RngStream::kTie, static_cast<std::uint32_t>(node)),
         node});
  }
  sort_entries(entries, larger_score_first(scheme));
  RankedSet ranked;
  ranked.order.reserve(entries.size());
  ranked.scores.reserve(entries.size());
  for (const RankEntry& e : entries) {
    ranked.order.push_back(e.index);
    ranked.scores.push_back(e.primary);
  }
  return ranked;
}

int max_postponement(const ActivityNetwork& net, int task) {
  if (task < 0 || task >= net.node_count()) {
    throw Error(ErrorKind::Lookup, "task index out of range");
  }
  int delta = net.project_end() - net.end_day(task);
  for (int succ : net.out_neighbors(task)) {
    delta = std::min(delta, net.start_day(succ) - net.end_day(task));
  }
  return std::max(delta, 0);
}

int max_postponement(const ActivityNetwork& net, const std::string& task) {
  return max_postponement(net, net.index_of(task));
}

ActivityNetwork apply_mitigation(const ActivityNetwork& net, int seed,
                                 const MitigationConfig& config,
                                 const RngStream& stream) {
  config.validate();
  const std::vector<int> component = net.out_component(seed);
  if (component.empty()) return net;
  const RankedSet ranked = score_nodes(net, component, config.scheme, stream);
  const int m = mitigated_count(config.gamma, static_cast<int>(ranked.order.size()));
  if (m == 0) return net;

  std::vector<int> start(net.node_count()), end(net.node_count());
  for (int i = 0; i < net.node_count(); ++i) {
    start[i] = net.start_day(i);
    end[i] = net.end_day(i);
  }
  for (int r = 0; r < m; ++r) {
    const int node = ranked.order[r];
    int delta = net.project_end() - end[node];
    for (int succ : net.out_neighbors(node)) {
      delta = std::min(delta, start[succ] - end[node]);
    }
    if (delta > 0) {
      start[node] += delta;
      end[node] += delta;
    }
  }
  return net.with_times(std::move(start), std::move(end));
}

ActivityNetwork apply_mitigation(const ActivityNetwork& net,
                                 const std::string& seed,
                                 const MitigationConfig& config,
                                 const RngStream& stream) {
  return apply_mitigation(net, net.index_of(seed), config, stream);
}

void mitigate_plan_times(const SeedPlan& plan, const ScoreInputs& inputs,
                         const MitigationScheme& scheme, double gamma,
                         const RngStream& stream, std::span<int> lstart,
                         std::span<int> lend,
                         std::vector<RankEntry>& scratch) {
  const int n = plan.component_size();
  const int m = mitigated_count(gamma, n);
  if (m == 0) return;

  const ActivityNetwork& net = *inputs.net;
  scratch.clear();
  for (int local = 1; local <= n; ++local) {
    const int node = plan.nodes[local];
    scratch.push_back(
        {score_of(scheme, net, inputs.out_component_size, node, stream),
         stream.bits(RngStream::kTie, static_cast<std::uint32_t>(node)),
         local});
  }
  sort_entries(scratch, larger_score_first(scheme));

  const int project_end = net.project_end();
  for (int r = 0; r < m; ++r) {
    const int local = scratch[r].index;
    int delta = project_end - lend[local];
    for (int k = plan.out_off[local]; k < plan.out_off[local + 1]; ++k) {
      delta = std::min(delta, lstart[plan.out_dst[k]] - lend[local]);
    }
    if (delta > 0) {
      lstart[local] += delta;
      lend[local] += delta;
    }
  }
}

}  // namespace actnet
