#include <doctest.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "actnet/rng.hpp"

#include "actnet/schedule.hpp"
#include "actnet/toygen.hpp"

using namespace actnet;

namespace {

ActivityNetwork parse_strings(const std::string& tasks,
                              const std::string& edges,
                              ParseOptions options = {}) {
  std::istringstream t(tasks), e(edges);
  return parse_schedule(t, e, options);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

// Brute-force reachability by path enumeration, independent of the
// adjacency structures under test.
bool reachable_brute(const ActivityNetwork& net, int from, int to) {
  if (from == to) return false;
  std::vector<int> stack{from};
  std::vector<char> seen(net.node_count(), 0);
  seen[from] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < net.node_count(); ++v) {
      if (net.has_edge(u, v) && !seen[v]) {
        if (v == to) return true;
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("parses the fig3 fixture files") {
  const ActivityNetwork net = parse_strings(
      "task_id,start_day,end_day\n"
      "v1,0,2\nv2,5,7\nv3,10,12\nv4,20,22\nv5,4,6\nv6,9,11\nv7,18,20\n",
      "source_id,target_id\n"
      "v1,v2\nv2,v3\nv3,v4\nv1,v5\nv5,v6\nv6,v7\n");
  CHECK(net.node_count() == 7);
  CHECK(net.edge_count() == 6);
  CHECK(net.project_end() == 22);  // defaults to the latest end
  CHECK(net.duration(net.index_of("v1")) == 3);
}

TEST_CASE("isolated tasks are a valid network") {
  const ActivityNetwork net = parse_strings(
      "task_id,start_day,end_day\na,0,1\nb,2,3\n", "source_id,target_id\n");
  CHECK(net.edge_count() == 0);
  CHECK(net.in_degree(0) == 0);
  CHECK(net.in_degree(1) == 0);
}

TEST_CASE("validation errors carry the right kind") {
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0,5\nb,6,9\n",
                        "source_id,target_id\na,b\nb,a\n");
        }) == ErrorKind::Cycle);
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0,5\nb,3,9\n",
                        "source_id,target_id\na,b\n");
        }) == ErrorKind::Precedence);
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0,5\n",
                        "source_id,target_id\na,zz\n");
        }) == ErrorKind::Reference);
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0\n",
                        "source_id,target_id\n");
        }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0,x\n",
                        "source_id,target_id\n");
        }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,0,5\nb,6,9\n",
                        "source_id,target_id\na,b\na,b\n");
        }) == ErrorKind::Parse);  // duplicate edges are rejected loudly
  CHECK(kind_of([] {
          parse_strings("task_id,start_day,end_day\na,5,4\n",
                        "source_id,target_id\n");
        }) == ErrorKind::Parse);  // end before start
}

TEST_CASE("parse errors name the offending line") {
  try {
    parse_strings("task_id,start_day,end_day\na,0,5\nb,oops,9\n",
                  "source_id,target_id\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("cycle errors name one concrete cycle") {
  try {
    parse_strings("task_id,start_day,end_day\na,0,5\nb,6,9\nc,10,12\n",
                  "source_id,target_id\na,b\nb,a\n");
    FAIL("expected cycle error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("a") != std::string::npos);
    CHECK(what.find("->") != std::string::npos);
  }
}

TEST_CASE("negative slack is accepted only in non-strict mode") {
  ParseOptions lenient;
  lenient.strict = false;
  const ActivityNetwork net =
      parse_strings("task_id,start_day,end_day\na,0,5\nb,3,9\n",
                    "source_id,target_id\na,b\n", lenient);
  CHECK(net.free_float("a", "b") == 0);  // clamped
  CHECK_FALSE(net.strict());
}

TEST_CASE("free_float is the gap between completion and start") {
  const ActivityNetwork net =
      parse_strings("task_id,start_day,end_day\na,0,10\nb,25,30\nc,10,12\n",
                    "source_id,target_id\na,b\na,c\n");
  CHECK(net.free_float("a", "b") == 15);
  CHECK(net.free_float("a", "c") == 0);  // end may coincide with start
  CHECK(kind_of([&] { (void)net.free_float("b", "a"); }) == ErrorKind::Lookup);
  CHECK(kind_of([&] { (void)net.free_float("zz", "a"); }) == ErrorKind::Lookup);
}

TEST_CASE("out_component on handmade shapes") {
  const ActivityNetwork net = make_fig3();
  const auto comp = net.out_component("v1");
  CHECK(comp.size() == 6);
  CHECK(net.out_component("v4").empty());  // sink
  const ActivityNetwork chain = make_chain(3);
  CHECK(chain.out_component("t1").size() == 2);
  CHECK(chain.out_component("t2").size() == 1);
}

TEST_CASE("out_component agrees with brute-force path enumeration") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ActivityNetwork net = make_random_dag(18, 0.25, 60, seed);
    for (int v = 0; v < net.node_count(); ++v) {
      const auto comp = net.out_component(v);
      for (int w = 0; w < net.node_count(); ++w) {
        const bool in_comp =
            std::binary_search(comp.begin(), comp.end(), w);
        CHECK(in_comp == reachable_brute(net, v, w));
      }
    }
  }
}

TEST_CASE("topological order respects edges and is id-stable") {
  const ActivityNetwork chain = parse_strings(
      "task_id,start_day,end_day\na,0,1\nb,2,3\nc,4,5\n",
      "source_id,target_id\na,b\nb,c\n");
  const auto names = [&](const ActivityNetwork& net) {
    std::vector<std::string> out;
    for (int i : net.topological_order()) out.push_back(net.id_of(i));
    return out;
  };
  CHECK(names(chain) == std::vector<std::string>{"a", "b", "c"});

  const ActivityNetwork isolated = parse_strings(
      "task_id,start_day,end_day\ny,0,1\nx,0,1\n", "source_id,target_id\n");
  CHECK(names(isolated) == std::vector<std::string>{"x", "y"});

  const ActivityNetwork diamond = make_diamond();
  const auto order = names(diamond);
  CHECK(order.front() == "a");
  CHECK(order.back() == "d");

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const ActivityNetwork net = make_random_dag(25, 0.2, 80, seed);
    const auto& topo = net.topological_order();
    REQUIRE(static_cast<int>(topo.size()) == net.node_count());
    std::vector<int> position(net.node_count());
    for (int p = 0; p < static_cast<int>(topo.size()); ++p) {
      position[topo[p]] = p;
    }
    for (int u = 0; u < net.node_count(); ++u) {
      for (int v : net.out_neighbors(u)) {
        CHECK(position[u] < position[v]);
      }
    }
  }
}

TEST_CASE("summary stats on a single isolated task") {
  const ActivityNetwork net = parse_strings(
      "task_id,start_day,end_day\nonly,3,7\n", "source_id,target_id\n");
  const NetworkStats s = summary_stats(net);
  CHECK(s.n_nodes == 1);
  CHECK(s.n_edges == 0);
  CHECK(s.in_degree.mean == 0.0);
  CHECK(s.in_degree_zero == 1);
  CHECK(s.out_degree_zero == 1);
  CHECK(s.duration.mean == 5.0);
  CHECK(s.project_span_days == 5);
  CHECK(s.completion_by_day.back() == 1.0);
}

TEST_CASE("completion fraction is non-decreasing and reaches one") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ActivityNetwork net = make_random_dag(30, 0.15, 90, seed);
    const NetworkStats s = summary_stats(net);
    REQUIRE_FALSE(s.completion_by_day.empty());
    for (std::size_t t = 1; t < s.completion_by_day.size(); ++t) {
      CHECK(s.completion_by_day[t] >= s.completion_by_day[t - 1]);
    }
    CHECK(s.completion_by_day.back() == 1.0);
  }
}

TEST_CASE("survival_curve examples") {
  const std::vector<long> constant{3, 3, 3};
  const auto c1 = survival_curve(constant);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == std::pair<long, double>{3, 1.0});

  const std::vector<long> uniform{1, 2, 3, 4};
  const auto c2 = survival_curve(uniform);
  REQUIRE(c2.size() == 4);
  CHECK(c2[0] == std::pair<long, double>{1, 1.0});
  CHECK(c2[1] == std::pair<long, double>{2, 0.75});
  CHECK(c2[2] == std::pair<long, double>{3, 0.5});
  CHECK(c2[3] == std::pair<long, double>{4, 0.25});

  CHECK_THROWS_AS((void)survival_curve(std::vector<long>{}), Error);
}

TEST_CASE("survival_curve starts at one and never increases") {
  SequentialRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<long> values;
    const int n = 1 + static_cast<int>(rng.next_below(40));
    for (int i = 0; i < n; ++i) {
      values.push_back(static_cast<long>(rng.next_below(15)));
    }
    const auto curve = survival_curve(values);
    REQUIRE_FALSE(curve.empty());
    CHECK(curve.front().second == 1.0);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].second < curve[i - 1].second);
      CHECK(curve[i].first > curve[i - 1].first);
    }
  }
}

TEST_CASE("parse -> serialize -> parse round-trips") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ActivityNetwork net = make_random_dag(24, 0.2, 70, seed);
    std::ostringstream tasks_a, edges_a;
    serialize_schedule(net, tasks_a, edges_a);
    std::istringstream tasks_in(tasks_a.str()), edges_in(edges_a.str());
    ParseOptions options;
    options.project_end = net.project_end();
    const ActivityNetwork back = parse_schedule(tasks_in, edges_in, options);
    std::ostringstream tasks_b, edges_b;
    serialize_schedule(back, tasks_b, edges_b);
    CHECK(tasks_a.str() == tasks_b.str());
    CHECK(edges_a.str() == edges_b.str());
    CHECK(back.project_end() == net.project_end());
  }
}

TEST_CASE("free floats are non-negative on every valid network") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ActivityNetwork net = make_random_dag(30, 0.2, 80, seed);
    for (int u = 0; u < net.node_count(); ++u) {
      for (int v : net.out_neighbors(u)) {
        CHECK(net.free_float(u, v) >= 0);
      }
    }
  }
}
