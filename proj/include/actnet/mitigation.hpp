#pragma once

#include <span>
#include <string>
#include <vector>

#include "actnet/cascade.hpp"
#include "actnet/rng.hpp"
#include "actnet/schedule.hpp"

namespace actnet {

// Ranking rules over a failed seed's out-component, in the fixed order
// used for reporting and tie-breaking between schemes.
enum class SchemeKind {
  OutDegree = 0,
  OutComponentSize,
  Duration,
  StartDate,
  EndDate,
  Random,
};

inline constexpr int kSchemeCount = 6;

enum class DateOrder {
  LatestFirst,    // larger day number ranks first
  EarliestFirst,
};

// End dates rank latest-first (rear tasks absorb the delivery slack
// before earlier tasks chase their successors); start dates rank
// earliest-first (the tasks immediately downstream in time are mitigated
// when only a fraction can move). These defaults reproduce the published
// scheme orderings; both are overridable per scheme.
constexpr DateOrder default_date_order(SchemeKind kind) {
  return kind == SchemeKind::StartDate ? DateOrder::EarliestFirst
                                       : DateOrder::LatestFirst;
}

struct MitigationScheme {
  SchemeKind kind = SchemeKind::OutDegree;
  DateOrder date_order = DateOrder::LatestFirst;  // StartDate/EndDate only

  MitigationScheme() = default;
  MitigationScheme(SchemeKind k) : kind(k), date_order(default_date_order(k)) {}
  MitigationScheme(SchemeKind k, DateOrder order)
      : kind(k), date_order(order) {}
};

struct MitigationConfig {
  MitigationScheme scheme;
  double gamma = 0.0;  // fraction of the out-component to postpone

  void validate() const;
};

// The seed's out-component in rank order, highest rank first, with the
// score that produced each position.
struct RankedSet {
  std::vector<int> order;      // dense node indices
  std::vector<double> scores;  // aligned with order
};

const char* scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

// Number of nodes postponed for a given gamma: round-half-up of
// gamma * n, so gamma = 0.67 on six nodes postpones four and gamma = 1
// postpones all.
int mitigated_count(double gamma, int n);

// Scores the given nodes under the scheme and sorts them in the scheme's
// direction. Equal scores are permuted uniformly at random using the
// stream; the permutation depends only on the stream coordinates, not on
// call order.
RankedSet score_nodes(const ActivityNetwork& net, std::span<const int> nodes,
                      const MitigationScheme& scheme, const RngStream& stream);

// Largest allowed postponement of a task: bounded by the project
// delivery date and by each downstream neighbour's start (the postponed
// end may coincide with a successor's start). Never negative.
int max_postponement(const ActivityNetwork& net, int task);
int max_postponement(const ActivityNetwork& net, const std::string& task);

// Returns a derived network in which the top round-half-up(gamma * |V~|)
// ranked nodes were postponed one at a time, each by its maximum
// postponement against the schedule state current at its turn. The input
// network is not modified; durations and edges are unchanged.
ActivityNetwork apply_mitigation(const ActivityNetwork& net, int seed,
                                 const MitigationConfig& config,
                                 const RngStream& stream);
ActivityNetwork apply_mitigation(const ActivityNetwork& net,
                                 const std::string& seed,
                                 const MitigationConfig& config,
                                 const RngStream& stream);

// ---------------------------------------------------------------------
// Allocation-free variant used by the sweep machinery: ranks the plan's
// component and postpones in place on local day stamps. Produces exactly
// the times apply_mitigation would.

struct RankEntry {
  double primary;
  std::uint64_t tie;
  int index;  // plan-local index here, global index in score_nodes
};

// Per-network score inputs shared across seeds; out_component_size must
// hold |out_component(v)| for every node.
struct ScoreInputs {
  const ActivityNetwork* net = nullptr;
  std::span<const int> out_component_size;
};

void mitigate_plan_times(const SeedPlan& plan, const ScoreInputs& inputs,
                         const MitigationScheme& scheme, double gamma,
                         const RngStream& stream, std::span<int> lstart,
                         std::span<int> lend, std::vector<RankEntry>& scratch);

}  // namespace actnet
