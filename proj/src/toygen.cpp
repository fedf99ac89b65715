#include "actnet/toygen.hpp"

#include <algorithm>
#include <string>

#include "actnet/rng.hpp"

namespace actnet {

ActivityNetwork make_fig3() {
  std::vector<Task> tasks = {
      {"v1", 0, 2},  {"v2", 5, 7},   {"v3", 10, 12}, {"v4", 20, 22},
      {"v5", 4, 6},  {"v6", 9, 11},  {"v7", 18, 20},
  };
  std::vector<EdgeSpec> edges = {
      {"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"},
      {"v1", "v5"}, {"v5", "v6"}, {"v6", "v7"},
  };
  return ActivityNetwork::from_parts(std::move(tasks), edges, 25);
}

ActivityNetwork make_chain(int n) {
  if (n < 1) {
    throw Error(ErrorKind::Generation, "chain needs at least one task");
  }
  std::vector<Task> tasks;
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < n; ++i) {
    tasks.push_back({"t" + std::to_string(i + 1), 10 * i, 10 * i + 4});
    if (i > 0) edges.push_back({tasks[i - 1].id, tasks[i].id});
  }
  return ActivityNetwork::from_parts(std::move(tasks), edges,
                                     10 * (n - 1) + 14);
}

ActivityNetwork make_diamond() {
  std::vector<Task> tasks = {
      {"a", 0, 2}, {"b", 2, 4}, {"c", 2, 4}, {"d", 4, 6}};
  std::vector<EdgeSpec> edges = {
      {"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}};
  return ActivityNetwork::from_parts(std::move(tasks), edges);
}

ActivityNetwork make_random_dag(int n, double edge_prob, int horizon,
                                std::uint64_t seed) {
  if (n < 1 || horizon < 1 || !(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw Error(ErrorKind::Generation, "invalid random-dag parameters");
  }
  SequentialRng rng(seed);
  std::vector<Task> tasks;
  tasks.reserve(n);
  const int width = std::to_string(n).size();
  for (int i = 0; i < n; ++i) {
    std::string id = std::to_string(i + 1);
    id.insert(0, width - id.size(), '0');
    const int start = static_cast<int>(rng.next_below(horizon));
    const int dur = 1 + static_cast<int>(rng.next_below(
                           std::max(1, horizon / 5)));
    tasks.push_back({"t" + id, start, start + dur - 1});
  }

  // Candidate edges go from earlier to later tasks, so the result is
  // acyclic by construction.
  std::vector<int> by_time(n);
  for (int i = 0; i < n; ++i) by_time[i] = i;
  std::sort(by_time.begin(), by_time.end(), [&tasks](int a, int b) {
    if (tasks[a].start != tasks[b].start) return tasks[a].start < tasks[b].start;
    if (tasks[a].end != tasks[b].end) return tasks[a].end < tasks[b].end;
    return a < b;
  });
  std::vector<EdgeSpec> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Task& src = tasks[by_time[i]];
      const Task& dst = tasks[by_time[j]];
      if (src.end <= dst.start && rng.next_uniform() < edge_prob) {
        edges.push_back({src.id, dst.id});
      }
    }
  }

  int max_end = 0;
  for (const Task& t : tasks) max_end = std::max(max_end, t.end);
  const int slack = static_cast<int>(rng.next_below(horizon / 5 + 1));
  return ActivityNetwork::from_parts(std::move(tasks), edges,
                                     max_end + slack);
}

}  // namespace actnet
