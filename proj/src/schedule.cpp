#include "actnet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "actnet/csv.hpp"

namespace actnet {

namespace {

Moments moments_of(const std::vector<long>& values) {
  Moments m;
  if (values.empty()) return m;
  long double sum = 0.0L;
  m.min = m.max = values[0];
  for (long v : values) {
    sum += v;
    m.min = std::min(m.min, v);
    m.max = std::max(m.max, v);
  }
  m.mean = static_cast<double>(sum / values.size());
  if (values.size() > 1) {
    long double ss = 0.0L;
    for (long v : values) {
      const long double d = v - m.mean;
      ss += d * d;
    }
    m.std_dev = static_cast<double>(
        std::sqrt(ss / (static_cast<long double>(values.size()) - 1)));
  }
  return m;
}

}  // namespace

ActivityNetwork ActivityNetwork::from_parts(std::vector<Task> tasks,
                                            const std::vector<EdgeSpec>& edges,
                                            std::optional<int> project_end,
                                            bool strict) {
  ActivityNetwork net;
  net.strict_ = strict;
  net.tasks_ = std::move(tasks);
  net.index_.reserve(net.tasks_.size());
  for (int i = 0; i < net.node_count(); ++i) {
    const Task& t = net.tasks_[i];
    if (t.id.empty() || t.id.find(',') != std::string::npos ||
        t.id.find('\n') != std::string::npos) {
      throw Error(ErrorKind::Parse, "invalid task id '" + t.id + "'");
    }
    if (t.start < 0) {
      throw Error(ErrorKind::Parse,
                  "task '" + t.id + "': negative start day " +
                      std::to_string(t.start));
    }
    if (t.end < t.start) {
      throw Error(ErrorKind::Parse, "task '" + t.id + "': end day " +
                                        std::to_string(t.end) +
                                        " before start day " +
                                        std::to_string(t.start));
    }
    if (!net.index_.emplace(t.id, i).second) {
      throw Error(ErrorKind::Parse, "duplicate task id '" + t.id + "'");
    }
  }

  std::vector<std::pair<int, int>> idx_edges;
  idx_edges.reserve(edges.size());
  std::set<std::pair<int, int>> seen;
  for (const EdgeSpec& e : edges) {
    const auto src_it = net.index_.find(e.source);
    if (src_it == net.index_.end()) {
      throw Error(ErrorKind::Reference,
                  "edge references unknown task '" + e.source + "'");
    }
    const auto dst_it = net.index_.find(e.target);
    if (dst_it == net.index_.end()) {
      throw Error(ErrorKind::Reference,
                  "edge references unknown task '" + e.target + "'");
    }
    const int src = src_it->second;
    const int dst = dst_it->second;
    if (src == dst) {
      throw Error(ErrorKind::Cycle, "self-loop on task '" + e.source + "'");
    }
    if (!seen.emplace(src, dst).second) {
      throw Error(ErrorKind::Parse, "duplicate edge (" + e.source + ", " +
                                        e.target + ")");
    }
    idx_edges.emplace_back(src, dst);
  }
  net.n_edges_ = static_cast<int>(idx_edges.size());
  net.build_adjacency(idx_edges);
  net.compute_topological_order();  // throws Cycle on failure

  // Temporal feasibility after structural validity, so a cyclic input is
  // reported as a cycle even when its day stamps also overlap.
  if (strict) {
    for (const auto& [src, dst] : idx_edges) {
      if (net.tasks_[src].end > net.tasks_[dst].start) {
        throw Error(ErrorKind::Precedence,
                    "edge (" + net.tasks_[src].id + ", " + net.tasks_[dst].id +
                        "): predecessor ends day " +
                        std::to_string(net.tasks_[src].end) +
                        " after successor starts day " +
                        std::to_string(net.tasks_[dst].start));
      }
    }
  }

  int max_end = 0;
  for (const Task& t : net.tasks_) max_end = std::max(max_end, t.end);
  net.project_end_ = project_end.value_or(max_end);
  if (net.project_end_ < max_end) {
    throw Error(ErrorKind::Parse,
                "project end " + std::to_string(net.project_end_) +
                    " before latest task end " + std::to_string(max_end));
  }
  return net;
}

void ActivityNetwork::build_adjacency(
    const std::vector<std::pair<int, int>>& edges) {
  const int n = node_count();
  out_off_.assign(n + 1, 0);
  in_off_.assign(n + 1, 0);
  for (const auto& [src, dst] : edges) {
    ++out_off_[src + 1];
    ++in_off_[dst + 1];
  }
  for (int i = 0; i < n; ++i) {
    out_off_[i + 1] += out_off_[i];
    in_off_[i + 1] += in_off_[i];
  }
  out_adj_.resize(edges.size());
  in_adj_.resize(edges.size());
  std::vector<int> out_cursor(out_off_.begin(), out_off_.end() - 1);
  std::vector<int> in_cursor(in_off_.begin(), in_off_.end() - 1);
  for (const auto& [src, dst] : edges) {
    out_adj_[out_cursor[src]++] = dst;
    in_adj_[in_cursor[dst]++] = src;
  }
  for (int i = 0; i < n; ++i) {
    std::sort(out_adj_.begin() + out_off_[i], out_adj_.begin() + out_off_[i + 1]);
    std::sort(in_adj_.begin() + in_off_[i], in_adj_.begin() + in_off_[i + 1]);
  }
}

void ActivityNetwork::compute_topological_order() {
  const int n = node_count();
  // Tie-break by task id so the order is stable across runs.
  std::vector<int> id_rank(n);
  {
    std::vector<int> by_id(n);
    for (int i = 0; i < n; ++i) by_id[i] = i;
    std::sort(by_id.begin(), by_id.end(), [this](int a, int b) {
      return tasks_[a].id < tasks_[b].id;
    });
    for (int r = 0; r < n; ++r) id_rank[by_id[r]] = r;
  }

  std::vector<int> pending(n);
  auto cmp = [&id_rank](int a, int b) { return id_rank[a] > id_rank[b]; };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int i = 0; i < n; ++i) {
    pending[i] = in_degree(i);
    if (pending[i] == 0) ready.push(i);
  }
  topo_.clear();
  topo_.reserve(n);
  while (!ready.empty()) {
    const int u = ready.top();
    ready.pop();
    topo_.push_back(u);
    for (int v : out_neighbors(u)) {
      if (--pending[v] == 0) ready.push(v);
    }
  }
  if (static_cast<int>(topo_.size()) == n) return;

  // Report one concrete cycle: walk back through unfinished nodes.
  int cur = 0;
  while (pending[cur] == 0) ++cur;
  std::vector<int> path;
  std::vector<int> mark(n, -1);
  while (mark[cur] < 0) {
    mark[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (int p : in_neighbors(cur)) {
      if (pending[p] > 0) {
        cur = p;
        break;
      }
    }
  }
  std::string cycle;
  for (int i = static_cast<int>(path.size()) - 1; i >= mark[cur]; --i) {
    cycle += tasks_[path[i]].id;
    cycle += " -> ";
  }
  cycle += tasks_[cur].id;
  throw Error(ErrorKind::Cycle, "dependency cycle: " + cycle);
}

int ActivityNetwork::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorKind::Lookup, "unknown task id '" + id + "'");
  }
  return it->second;
}

bool ActivityNetwork::has_edge(int src, int dst) const {
  const auto nbrs = out_neighbors(src);
  return std::binary_search(nbrs.begin(), nbrs.end(), dst);
}

int ActivityNetwork::free_float(int src, int dst) const {
  if (!has_edge(src, dst)) {
    throw Error(ErrorKind::Lookup, "no edge (" + tasks_[src].id + ", " +
                                       tasks_[dst].id + ")");
  }
  return std::max(0, tasks_[dst].start - tasks_[src].end);
}

std::vector<int> ActivityNetwork::out_component(int idx) const {
  std::vector<char> seen(node_count(), 0);
  std::vector<int> stack{idx};
  seen[idx] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  std::vector<int> result;
  for (int i = 0; i < node_count(); ++i) {
    if (seen[i] && i != idx) result.push_back(i);
  }
  return result;
}

ActivityNetwork ActivityNetwork::with_times(std::vector<int> start,
                                            std::vector<int> end) const {
  ActivityNetwork net = *this;
  for (int i = 0; i < node_count(); ++i) {
    net.tasks_[i].start = start[i];
    net.tasks_[i].end = end[i];
  }
  return net;
}

ActivityNetwork parse_schedule(std::istream& tasks_source,
                               std::istream& edges_source,
                               const ParseOptions& options) {
  std::vector<Task> tasks;
  {
    CsvReader csv(tasks_source);
    csv.expect_header("task_id,start_day,end_day");
    std::vector<std::string> row;
    while (csv.next_row(row)) {
      if (row.size() != 3) {
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(csv.line_number()) +
                        ": expected 3 fields, got " +
                        std::to_string(row.size()));
      }
      Task t;
      t.id = row[0];
      t.start = static_cast<int>(csv.parse_int(row[1]));
      t.end = static_cast<int>(csv.parse_int(row[2]));
      tasks.push_back(std::move(t));
    }
  }
  std::vector<EdgeSpec> edges;
  {
    CsvReader csv(edges_source);
    csv.expect_header("source_id,target_id");
    std::vector<std::string> row;
    while (csv.next_row(row)) {
      if (row.size() != 2) {
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(csv.line_number()) +
                        ": expected 2 fields, got " +
                        std::to_string(row.size()));
      }
      edges.push_back({row[0], row[1]});
    }
  }
  return ActivityNetwork::from_parts(std::move(tasks), edges,
                                     options.project_end, options.strict);
}

void serialize_schedule(const ActivityNetwork& net, std::ostream& tasks_out,
                        std::ostream& edges_out) {
  tasks_out << "task_id,start_day,end_day\n";
  for (int i = 0; i < net.node_count(); ++i) {
    const Task& t = net.task(i);
    tasks_out << t.id << ',' << t.start << ',' << t.end << '\n';
  }
  edges_out << "source_id,target_id\n";
  for (int i = 0; i < net.node_count(); ++i) {
    for (int j : net.out_neighbors(i)) {
      edges_out << net.id_of(i) << ',' << net.id_of(j) << '\n';
    }
  }
}

NetworkStats summary_stats(const ActivityNetwork& net) {
  NetworkStats s;
  const int n = net.node_count();
  s.n_nodes = n;
  s.n_edges = net.edge_count();
  s.project_end = net.project_end();

  std::vector<long> in_deg, out_deg, durations, floats;
  in_deg.reserve(n);
  out_deg.reserve(n);
  durations.reserve(n);
  floats.reserve(net.edge_count());
  int min_start = n > 0 ? net.start_day(0) : 0;
  int max_end = 0;
  for (int i = 0; i < n; ++i) {
    in_deg.push_back(net.in_degree(i));
    out_deg.push_back(net.out_degree(i));
    durations.push_back(net.duration(i));
    min_start = std::min(min_start, net.start_day(i));
    max_end = std::max(max_end, net.end_day(i));
    if (net.in_degree(i) == 0) ++s.in_degree_zero;
    if (net.out_degree(i) == 0) ++s.out_degree_zero;
    for (int j : net.out_neighbors(i)) {
      floats.push_back(net.free_float(i, j));
    }
  }
  s.in_degree = moments_of(in_deg);
  s.out_degree = moments_of(out_deg);
  s.duration = moments_of(durations);
  s.inter_event = moments_of(floats);
  s.project_span_days = n > 0 ? max_end - min_start + 1 : 0;

  s.completion_by_day.assign(net.project_end() + 1, 0.0);
  if (n > 0) {
    std::vector<int> ends_at(net.project_end() + 1, 0);
    for (int i = 0; i < n; ++i) ++ends_at[net.end_day(i)];
    int done = 0;
    for (int t = 0; t <= net.project_end(); ++t) {
      done += ends_at[t];
      s.completion_by_day[t] = static_cast<double>(done) / n;
    }
  }
  return s;
}

std::vector<std::pair<long, double>> survival_curve(
    std::span<const long> values) {
  if (values.empty()) {
    throw Error(ErrorKind::Domain, "survival_curve: empty input");
  }
  std::vector<long> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<long, double>> curve;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    curve.emplace_back(sorted[i], static_cast<double>(sorted.size() - i) / n);
    i = j;
  }
  return curve;
}

}  // namespace actnet
