#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "actnet/error.hpp"

namespace actnet {

// A scheduled activity. Day stamps are integer offsets from the project
// origin; a task occupies days [start, end] inclusive, so the minimum
// duration is one day and start == end is a one-day task.
struct Task {
  std::string id;
  int start = 0;
  int end = 0;

  int duration() const { return end - start + 1; }
};

struct EdgeSpec {
  std::string source;
  std::string target;
};

struct Moments {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n-1)
  long min = 0;
  long max = 0;
};

struct NetworkStats {
  int n_nodes = 0;
  int n_edges = 0;
  Moments in_degree;
  Moments out_degree;
  Moments inter_event;  // free float per edge
  Moments duration;
  int in_degree_zero = 0;
  int out_degree_zero = 0;
  int project_span_days = 0;  // max end - min start + 1
  int project_end = 0;
  // fraction of tasks with end <= t, for t = 0 .. project_end
  std::vector<double> completion_by_day;
};

// Immutable time-stamped DAG of tasks. Construction validates every
// invariant; afterwards the network is safe to read from any number of
// threads. Nodes are addressed by dense index in file order; the string
// task id maps to the index via index_of().
class ActivityNetwork {
 public:
  // strict=true rejects edges with end_i > start_j. Real schedule exports
  // sometimes contain such overlaps; strict=false keeps them and
  // free_float() clamps the negative slack to zero.
  static ActivityNetwork from_parts(std::vector<Task> tasks,
                                    const std::vector<EdgeSpec>& edges,
                                    std::optional<int> project_end = {},
                                    bool strict = true);

  int node_count() const { return static_cast<int>(tasks_.size()); }
  int edge_count() const { return n_edges_; }
  int project_end() const { return project_end_; }
  bool strict() const { return strict_; }

  const Task& task(int idx) const { return tasks_[idx]; }
  int start_day(int idx) const { return tasks_[idx].start; }
  int end_day(int idx) const { return tasks_[idx].end; }
  int duration(int idx) const { return tasks_[idx].duration(); }
  const std::string& id_of(int idx) const { return tasks_[idx].id; }

  // Throws Lookup for unknown ids.
  int index_of(const std::string& id) const;
  bool has_task(const std::string& id) const {
    return index_.find(id) != index_.end();
  }

  std::span<const int> out_neighbors(int idx) const {
    return {out_adj_.data() + out_off_[idx],
            out_adj_.data() + out_off_[idx + 1]};
  }
  std::span<const int> in_neighbors(int idx) const {
    return {in_adj_.data() + in_off_[idx], in_adj_.data() + in_off_[idx + 1]};
  }
  int out_degree(int idx) const { return out_off_[idx + 1] - out_off_[idx]; }
  int in_degree(int idx) const { return in_off_[idx + 1] - in_off_[idx]; }
  bool has_edge(int src, int dst) const;

  // Inter-event time of the edge (src, dst): start_dst - end_src, clamped
  // at zero (negative raw slack only occurs in non-strict networks).
  // Throws Lookup if the edge does not exist.
  int free_float(int src, int dst) const;
  int free_float(const std::string& src, const std::string& dst) const {
    return free_float(index_of(src), index_of(dst));
  }

  // All nodes reachable from idx along directed paths, excluding idx.
  // Sorted by dense index.
  std::vector<int> out_component(int idx) const;
  std::vector<int> out_component(const std::string& id) const {
    return out_component(index_of(id));
  }

  // Every edge (i, j) has i before j; ties are broken by task id, so the
  // order is reproducible for identical input.
  const std::vector<int>& topological_order() const { return topo_; }

  // Derived network with the same ids/edges and new day stamps; used by
  // mitigation. Durations and edges must be unchanged.
  ActivityNetwork with_times(std::vector<int> start,
                             std::vector<int> end) const;

 private:
  ActivityNetwork() = default;
  void build_adjacency(const std::vector<std::pair<int, int>>& edges);
  void compute_topological_order();

  std::vector<Task> tasks_;
  std::unordered_map<std::string, int> index_;
  int n_edges_ = 0;
  int project_end_ = 0;
  bool strict_ = true;
  std::vector<int> out_off_, out_adj_;  // CSR, neighbors sorted ascending
  std::vector<int> in_off_, in_adj_;
  std::vector<int> topo_;
};

struct ParseOptions {
  std::optional<int> project_end;
  bool strict = true;
};

// Reads the canonical task/edge CSVs (headers `task_id,start_day,end_day`
// and `source_id,target_id`) and returns a validated network.
ActivityNetwork parse_schedule(std::istream& tasks_source,
                               std::istream& edges_source,
                               const ParseOptions& options = {});

// Inverse of parse_schedule, canonical formatting (LF, no quoting).
void serialize_schedule(const ActivityNetwork& net, std::ostream& tasks_out,
                        std::ostream& edges_out);

NetworkStats summary_stats(const ActivityNetwork& net);

// For each distinct value v (ascending), the probability that a sample is
// >= v. Starts at exactly 1 and is non-increasing. Throws Domain on empty
// input.
std::vector<std::pair<long, double>> survival_curve(
    std::span<const long> values);

}  // namespace actnet
