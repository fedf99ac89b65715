#include "actnet/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "actnet/csv.hpp"

namespace actnet {

namespace {

// Integer-exact per-seed accumulators over paired runs; cascade sizes are
// small ints, so sums and cross products stay exact and reductions are
// bit-stable on any thread count.
struct SeedStats {
  long long sum_m = 0, sum_u = 0;
  long long sum_mm = 0, sum_uu = 0, sum_mu = 0;
  double sum_ratio = 0.0, sum_ratio2 = 0.0;
};

struct Workspace {
  std::vector<SeedPlan> plans;
  std::vector<int> outcomp_size;
  std::size_t max_nodes = 1;
};

Workspace build_workspace(const ActivityNetwork& net) {
  Workspace ws;
  const int n = net.node_count();
  ws.plans.reserve(n);
  ws.outcomp_size.resize(n);
  for (int v = 0; v < n; ++v) {
    ws.plans.push_back(make_seed_plan(net, v));
    ws.outcomp_size[v] = ws.plans.back().component_size();
    ws.max_nodes = std::max(ws.max_nodes, ws.plans.back().nodes.size());
  }
  return ws;
}

struct CellReduce {
  double r1 = 1.0, r2 = 1.0, r1_sigma = 0.0, r2_sigma = 0.0;
  double r1_sigma_unpaired = 0.0, r2_sigma_unpaired = 0.0;
  double mitigated_mean = 1.0, unmitigated_mean = 1.0;
};

CellReduce reduce_cell(const std::vector<SeedStats>& stats,
                       const std::vector<char>& included, int n_runs,
                       bool per_run_ratio) {
  CellReduce out;
  const double n = n_runs;
  long long total_m = 0, total_u = 0;
  int n_seeds = 0;
  double ratio_sum = 0.0;
  for (std::size_t v = 0; v < stats.size(); ++v) {
    if (!included[v]) continue;
    ++n_seeds;
    total_m += stats[v].sum_m;
    total_u += stats[v].sum_u;
    if (per_run_ratio) {
      ratio_sum += stats[v].sum_ratio / n;
    } else {
      ratio_sum += static_cast<double>(stats[v].sum_m) /
                   static_cast<double>(stats[v].sum_u);
    }
  }
  if (n_seeds == 0) return out;
  out.r1 = ratio_sum / n_seeds;
  out.r2 = static_cast<double>(total_m) / static_cast<double>(total_u);
  out.mitigated_mean = static_cast<double>(total_m) / (n * n_seeds);
  out.unmitigated_mean = static_cast<double>(total_u) / (n * n_seeds);

  // Delta-method standard errors from the run samples, both with the
  // paired-stream covariance and as if the conditions were independent.
  double var_r1 = 0.0, var_r1_unpaired = 0.0;
  double var_r2_num = 0.0, var_r2_num_unpaired = 0.0;
  const double c = out.r2;
  for (std::size_t v = 0; v < stats.size(); ++v) {
    if (!included[v]) continue;
    const SeedStats& s = stats[v];
    const double mv = s.sum_m / n, uv = s.sum_u / n;
    const double var_m = std::max(0.0, s.sum_mm / n - mv * mv);
    const double var_u = std::max(0.0, s.sum_uu / n - uv * uv);
    const double uu = static_cast<double>(s.sum_u) *
                      static_cast<double>(s.sum_u);
    if (per_run_ratio) {
      const double mean_ratio = s.sum_ratio / n;
      const double vk =
          std::max(0.0, s.sum_ratio2 / n - mean_ratio * mean_ratio);
      var_r1 += vk / n;
      var_r1_unpaired += vk / n;
    } else {
      const double r = mv / uv;
      const double vk = std::max(
          0.0, (s.sum_mm - 2.0 * r * s.sum_mu + r * r * s.sum_uu) / n);
      var_r1 += vk * n / uu;
      var_r1_unpaired += (var_m + r * r * var_u) * n * n / (n * uu);
    }
    const double vk2 = std::max(
        0.0, (s.sum_mm - 2.0 * c * s.sum_mu + c * c * s.sum_uu) / n -
                 (mv - c * uv) * (mv - c * uv));
    var_r2_num += vk2 / n;
    var_r2_num_unpaired += (var_m + c * c * var_u) / n;
  }
  out.r1_sigma = std::sqrt(var_r1) / n_seeds;
  out.r1_sigma_unpaired = std::sqrt(var_r1_unpaired) / n_seeds;
  const double total_u_mean = static_cast<double>(total_u) / n;
  if (total_u_mean > 0.0) {
    out.r2_sigma = std::sqrt(var_r2_num) / total_u_mean;
    out.r2_sigma_unpaired = std::sqrt(var_r2_num_unpaired) / total_u_mean;
  }
  return out;
}

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

const char* metric_name(Metric metric) {
  return metric == Metric::R1 ? "R1" : "R2";
}

Metric metric_from_name(const std::string& name) {
  if (name == "R1") return Metric::R1;
  if (name == "R2") return Metric::R2;
  throw Error(ErrorKind::Config, "unknown metric '" + name + "'");
}

void SweepConfig::validate() const {
  if (q0_grid.empty() || tau_grid.empty() || gamma_grid.empty() ||
      schemes.empty()) {
    throw Error(ErrorKind::Config, "sweep grids must be non-empty");
  }
  for (double q : q0_grid) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorKind::Config,
                  "q0 outside [0, 1]: " + std::to_string(q));
    }
  }
  for (double t : tau_grid) {
    if (!(t > 0.0)) {
      throw Error(ErrorKind::Config,
                  "tau_tilde must be positive: " + std::to_string(t));
    }
  }
  for (double g : gamma_grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw Error(ErrorKind::Config,
                  "gamma outside [0, 1]: " + std::to_string(g));
    }
  }
  if (n_runs < 1) {
    throw Error(ErrorKind::Config, "n_runs must be >= 1");
  }
}

ResultsTable sweep(const ActivityNetwork& net, const SweepConfig& config) {
  config.validate();
  const Workspace ws = build_workspace(net);
  const int n_seeds = net.node_count();
  const int n_runs = config.n_runs;
  const int n_cells_per_pair = static_cast<int>(config.gamma_grid.size() *
                                                config.schemes.size());

  int threads = config.threads;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif

  ResultsTable table;
  table.rows.resize(config.tau_grid.size() * config.q0_grid.size() *
                    n_cells_per_pair);

  const ScoreInputs score_inputs{&net, ws.outcomp_size};
  std::vector<std::vector<SeedStats>> stats(n_cells_per_pair);
  for (auto& s : stats) s.resize(n_seeds);

  std::size_t row_base = 0;
  for (double tau_tilde : config.tau_grid) {
    const std::vector<double> etab = exp_table(tau_tilde, net.project_end());
    for (double q0 : config.q0_grid) {
      CascadeParams params{q0, tau_tilde};
      params.validate();
      for (auto& s : stats) std::fill(s.begin(), s.end(), SeedStats{});

#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
      {
        std::vector<int> lstart(ws.max_nodes), lend(ws.max_nodes);
        std::vector<std::uint8_t> failed(ws.max_nodes);
        std::vector<int> base_sizes(n_runs);
        std::vector<RankEntry> rank_scratch;

#ifdef _OPENMP
#pragma omp for schedule(dynamic, 4)
#endif
        for (int v = 0; v < n_seeds; ++v) {
          const SeedPlan& plan = ws.plans[v];
          const std::size_t m = plan.nodes.size();
          for (int k = 0; k < n_runs; ++k) {
            RngStream stream(config.master_seed,
                             static_cast<std::uint32_t>(v),
                             static_cast<std::uint32_t>(k));
            base_sizes[k] = run_cascade_on_plan(
                plan, plan.base_start, plan.base_end, q0, etab, stream,
                {failed.data(), m});
          }
          int cell = 0;
          for (double gamma : config.gamma_grid) {
            for (const MitigationScheme& scheme : config.schemes) {
              SeedStats& acc = stats[cell][v];
              for (int k = 0; k < n_runs; ++k) {
                RngStream stream(config.master_seed,
                                 static_cast<std::uint32_t>(v),
                                 static_cast<std::uint32_t>(k));
                std::copy_n(plan.base_start.data(), m, lstart.data());
                std::copy_n(plan.base_end.data(), m, lend.data());
                mitigate_plan_times(plan, score_inputs, scheme, gamma,
                                    stream, {lstart.data(), m},
                                    {lend.data(), m}, rank_scratch);
                const int size = run_cascade_on_plan(
                    plan, {lstart.data(), m}, {lend.data(), m}, q0, etab,
                    stream, {failed.data(), m});
                const int u = base_sizes[k];
                acc.sum_m += size;
                acc.sum_u += u;
                acc.sum_mm += static_cast<long long>(size) * size;
                acc.sum_uu += static_cast<long long>(u) * u;
                acc.sum_mu += static_cast<long long>(size) * u;
                if (config.per_run_ratio) {
                  const double ratio = static_cast<double>(size) / u;
                  acc.sum_ratio += ratio;
                  acc.sum_ratio2 += ratio * ratio;
                }
              }
              ++cell;
            }
          }
        }
      }

      std::vector<char> included(n_seeds, 1);
      if (config.exclude_empty_seeds) {
        for (int v = 0; v < n_seeds; ++v) {
          included[v] = ws.outcomp_size[v] > 0;
        }
      }
      int cell = 0;
      for (double gamma : config.gamma_grid) {
        for (const MitigationScheme& scheme : config.schemes) {
          const CellReduce red = reduce_cell(stats[cell], included, n_runs,
                                             config.per_run_ratio);
          CellResult& row = table.rows[row_base + cell];
          row.scheme = scheme.kind;
          row.date_order = scheme.date_order;
          row.q0 = q0;
          row.tau_tilde = tau_tilde;
          row.gamma = gamma;
          row.r1 = red.r1;
          row.r2 = red.r2;
          row.r1_sigma = red.r1_sigma;
          row.r2_sigma = red.r2_sigma;
          row.r1_sigma_unpaired = red.r1_sigma_unpaired;
          row.r2_sigma_unpaired = red.r2_sigma_unpaired;
          row.mitigated_mean = red.mitigated_mean;
          row.unmitigated_mean = red.unmitigated_mean;
          row.n_runs = n_runs;
          row.master_seed = config.master_seed;
          ++cell;
        }
      }
      row_base += n_cells_per_pair;
    }
  }
  return table;
}

ResultsTable sweep_reference(const ActivityNetwork& net,
                             const SweepConfig& config) {
  config.validate();
  const int n_seeds = net.node_count();
  const int n_runs = config.n_runs;
  ResultsTable table;

  for (double tau_tilde : config.tau_grid) {
    for (double q0 : config.q0_grid) {
      const CascadeParams params{q0, tau_tilde};
      params.validate();
      for (double gamma : config.gamma_grid) {
        for (const MitigationScheme& scheme : config.schemes) {
          std::vector<SeedStats> stats(n_seeds);
          std::vector<char> included(n_seeds, 1);
          for (int v = 0; v < n_seeds; ++v) {
            if (config.exclude_empty_seeds && net.out_component(v).empty()) {
              included[v] = 0;
              continue;
            }
            for (int k = 0; k < n_runs; ++k) {
              RngStream stream(config.master_seed,
                               static_cast<std::uint32_t>(v),
                               static_cast<std::uint32_t>(k));
              const MitigationConfig mit{scheme, gamma};
              const ActivityNetwork mitigated =
                  apply_mitigation(net, v, mit, stream);
              const int size = run_cascade(mitigated, v, params, stream).size;
              const int u = run_cascade(net, v, params, stream).size;
              SeedStats& acc = stats[v];
              acc.sum_m += size;
              acc.sum_u += u;
              acc.sum_mm += static_cast<long long>(size) * size;
              acc.sum_uu += static_cast<long long>(u) * u;
              acc.sum_mu += static_cast<long long>(size) * u;
              if (config.per_run_ratio) {
                const double ratio = static_cast<double>(size) / u;
                acc.sum_ratio += ratio;
                acc.sum_ratio2 += ratio * ratio;
              }
            }
          }
          const CellReduce red =
              reduce_cell(stats, included, n_runs, config.per_run_ratio);
          CellResult row;
          row.scheme = scheme.kind;
          row.date_order = scheme.date_order;
          row.q0 = q0;
          row.tau_tilde = tau_tilde;
          row.gamma = gamma;
          row.r1 = red.r1;
          row.r2 = red.r2;
          row.r1_sigma = red.r1_sigma;
          row.r2_sigma = red.r2_sigma;
          row.r1_sigma_unpaired = red.r1_sigma_unpaired;
          row.r2_sigma_unpaired = red.r2_sigma_unpaired;
          row.mitigated_mean = red.mitigated_mean;
          row.unmitigated_mean = red.unmitigated_mean;
          row.n_runs = n_runs;
          row.master_seed = config.master_seed;
          table.rows.push_back(row);
        }
      }
    }
  }
  return table;
}

CellResult evaluate_cell(const ActivityNetwork& net,
                         const MitigationScheme& scheme,
                         const CascadeParams& params, double gamma, int n_runs,
                         std::uint64_t master_seed, bool per_run_ratio,
                         bool exclude_empty_seeds) {
  SweepConfig config;
  config.q0_grid = {params.q0};
  config.tau_grid = {params.tau_tilde};
  config.gamma_grid = {gamma};
  config.schemes = {scheme};
  config.n_runs = n_runs;
  config.master_seed = master_seed;
  config.per_run_ratio = per_run_ratio;
  config.exclude_empty_seeds = exclude_empty_seeds;
  return sweep(net, config).rows.at(0);
}

double compute_R1(const ActivityNetwork& net, const MitigationScheme& scheme,
                  const CascadeParams& params, double gamma, int n_runs,
                  std::uint64_t master_seed) {
  return evaluate_cell(net, scheme, params, gamma, n_runs, master_seed).r1;
}

double compute_R2(const ActivityNetwork& net, const MitigationScheme& scheme,
                  const CascadeParams& params, double gamma, int n_runs,
                  std::uint64_t master_seed) {
  return evaluate_cell(net, scheme, params, gamma, n_runs, master_seed).r2;
}

BestSchemeMap best_scheme_map(const ResultsTable& table, Metric metric,
                              double threshold) {
  std::vector<char> present(kSchemeCount, 0);
  for (const CellResult& row : table.rows) {
    present[static_cast<int>(row.scheme)] = 1;
  }
  const int n_schemes =
      static_cast<int>(std::count(present.begin(), present.end(), 1));
  if (n_schemes < 2) {
    throw Error(ErrorKind::IncompleteTable,
                "need at least two schemes to rank, found " +
                    std::to_string(n_schemes));
  }

  using Key = std::tuple<double, double, double>;  // (tau, q0, gamma)
  std::map<Key, std::vector<double>> cells;
  for (const CellResult& row : table.rows) {
    const double value = metric == Metric::R1 ? row.r1 : row.r2;
    if (std::isnan(value)) {
      throw Error(ErrorKind::IncompleteTable,
                  std::string("table has no ") + metric_name(metric) +
                      " value for scheme " + scheme_name(row.scheme));
    }
    auto& slot = cells[{row.tau_tilde, row.q0, row.gamma}];
    slot.resize(kSchemeCount,
                std::numeric_limits<double>::quiet_NaN());
    slot[static_cast<int>(row.scheme)] = value;
  }

  // Validate coverage first so the error can list every gap.
  std::string missing;
  int missing_count = 0;
  for (const auto& [key, values] : cells) {
    for (int s = 0; s < kSchemeCount; ++s) {
      if (!present[s] || !std::isnan(values[s])) continue;
      ++missing_count;
      if (missing_count <= 10) {
        missing += "\n  tau_tilde=" + std::to_string(std::get<0>(key)) +
                   " q0=" + std::to_string(std::get<1>(key)) +
                   " gamma=" + std::to_string(std::get<2>(key)) +
                   " missing " + scheme_name(static_cast<SchemeKind>(s));
      }
    }
  }
  if (missing_count > 0) {
    if (missing_count > 10) {
      missing += "\n  ... and " + std::to_string(missing_count - 10) + " more";
    }
    throw Error(ErrorKind::IncompleteTable,
                "table does not cover every scheme at every cell:" + missing);
  }

  BestSchemeMap map;
  map.metric = metric;
  map.threshold = threshold;
  for (const auto& [key, values] : cells) {
    bool first = true;
    double best = 0.0, worst = 0.0;
    int best_scheme = -1;
    for (int s = 0; s < kSchemeCount; ++s) {
      if (!present[s]) continue;
      if (first || values[s] < best) {
        best = values[s];
        best_scheme = s;
      }
      worst = first ? values[s] : std::max(worst, values[s]);
      first = false;
    }
    BestCell cell;
    cell.tau_tilde = std::get<0>(key);
    cell.q0 = std::get<1>(key);
    cell.gamma = std::get<2>(key);
    if ((worst - best) / worst >= threshold) {
      cell.winner = static_cast<SchemeKind>(best_scheme);
    }
    map.cells.push_back(cell);
  }
  return map;
}

void write_results_csv(std::ostream& out, const ResultsTable& table) {
  out << "metric,scheme,q0,tau_tilde,gamma,value,n_runs,master_seed\n";
  for (const CellResult& row : table.rows) {
    const std::pair<const char*, double> metrics[] = {
        {"R1", row.r1},
        {"R2", row.r2},
        {"mitigated_mean", row.mitigated_mean},
        {"unmitigated_mean", row.unmitigated_mean},
    };
    for (const auto& [name, value] : metrics) {
      std::string line = name;
      line += ',';
      line += scheme_name(row.scheme);
      line += ',';
      append_double(line, row.q0);
      line += ',';
      append_double(line, row.tau_tilde);
      line += ',';
      append_double(line, row.gamma);
      line += ',';
      append_double(line, value);
      line += ',';
      line += std::to_string(row.n_runs);
      line += ',';
      line += std::to_string(row.master_seed);
      out << line << '\n';
    }
  }
}

ResultsTable read_results_csv(std::istream& in) {
  CsvReader csv(in);
  csv.expect_header("metric,scheme,q0,tau_tilde,gamma,value,n_runs,master_seed");
  const double nan = std::numeric_limits<double>::quiet_NaN();

  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, CellResult> cells;
  std::vector<Key> order;

  auto parse_double = [&csv](const std::string& s) {
    double value = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(csv.line_number()) +
                                        ": bad number '" + s + "'");
    }
    return value;
  };

  std::vector<std::string> row;
  while (csv.next_row(row)) {
    if (row.size() != 8) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(csv.line_number()) +
                                        ": expected 8 fields, got " +
                                        std::to_string(row.size()));
    }
    const Key key{row[1], row[2], row[3], row[4]};
    auto it = cells.find(key);
    if (it == cells.end()) {
      CellResult cell;
      cell.scheme = scheme_from_name(row[1]);
      cell.q0 = parse_double(row[2]);
      cell.tau_tilde = parse_double(row[3]);
      cell.gamma = parse_double(row[4]);
      cell.r1 = nan;
      cell.r2 = nan;
      cell.mitigated_mean = nan;
      cell.unmitigated_mean = nan;
      cell.n_runs = static_cast<int>(csv.parse_int(row[6]));
      try {
        cell.master_seed = std::stoull(row[7]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(csv.line_number()) +
                        ": bad master_seed '" + row[7] + "'");
      }
      it = cells.emplace(key, cell).first;
      order.push_back(key);
    }
    const double value = parse_double(row[5]);
    if (row[0] == "R1") {
      it->second.r1 = value;
    } else if (row[0] == "R2") {
      it->second.r2 = value;
    } else if (row[0] == "mitigated_mean") {
      it->second.mitigated_mean = value;
    } else if (row[0] == "unmitigated_mean") {
      it->second.unmitigated_mean = value;
    }  // unknown metrics are ignored
  }

  ResultsTable table;
  table.rows.reserve(order.size());
  for (const Key& key : order) table.rows.push_back(cells.at(key));
  return table;
}

void write_bestmap_csv(std::ostream& out, const BestSchemeMap& map) {
  out << "metric,tau_tilde,q0,gamma,best_scheme\n";
  for (const BestCell& cell : map.cells) {
    std::string line = metric_name(map.metric);
    line += ',';
    append_double(line, cell.tau_tilde);
    line += ',';
    append_double(line, cell.q0);
    line += ',';
    append_double(line, cell.gamma);
    line += ',';
    line += cell.winner ? scheme_name(*cell.winner) : "UNSPECIFIED";
    out << line << '\n';
  }
}

}  // namespace actnet
