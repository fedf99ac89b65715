// Command-line front end: ingestion, statistics, cascade debugging,
// parameter sweeps, best-scheme maps and fixture generation.

#include <unistd.h>

#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "actnet/dataset.hpp"
#include "actnet/experiment.hpp"
#include "actnet/manifest.hpp"
#include "actnet/toygen.hpp"
#include "actnet/version.hpp"

namespace fs = std::filesystem;
using namespace actnet;

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config,
                  flag + ": bad number '" + item + "'");
    }
  }
  if (values.empty()) {
    throw Error(ErrorKind::Config, flag + ": empty list");
  }
  return values;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  }
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  }
  return out;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// One manifest next to each output file, all sharing the run's resolved
// configuration and input digests.
class ManifestWriter {
 public:
  ManifestWriter(std::string command) : start_(clock_t::now()) {
    manifest_.command = std::move(command);
    manifest_.tool_version = kToolVersion;
  }

  void set_config(std::map<std::string, std::string> config) {
    manifest_.config = std::move(config);
  }
  void add_input(const std::string& path) {
    manifest_.inputs[path] = file_digest(path);
  }
  void finish_output(const std::string& path) {
    RunManifest m = manifest_;
    m.outputs[path] = file_digest(path);
    m.wall_seconds =
        std::chrono::duration<double>(clock_t::now() - start_).count();
    m.created_utc = utc_now();
    write_manifest(m, path);
  }

 private:
  using clock_t = std::chrono::steady_clock;
  RunManifest manifest_;
  clock_t::time_point start_;
};

ActivityNetwork load_network(const std::string& tasks_path,
                             const std::string& edges_path,
                             std::optional<int> project_end,
                             bool allow_overlap) {
  auto tasks_in = open_input(tasks_path);
  auto edges_in = open_input(edges_path);
  ParseOptions options;
  options.project_end = project_end;
  options.strict = !allow_overlap;
  return parse_schedule(tasks_in, edges_in, options);
}

void write_survival(const std::string& path, std::span<const long> values,
                    ManifestWriter& manifests) {
  auto out = open_output(path);
  out << "value,survival_probability\n";
  for (const auto& [value, prob] : survival_curve(values)) {
    out << value << ',' << format_double(prob) << '\n';
  }
  out.close();
  manifests.finish_output(path);
}

struct CommonScheduleArgs {
  std::string tasks_path;
  std::string edges_path;
  int project_end = -1;  // -1 = latest task end
  bool allow_overlap = false;

  std::optional<int> project_end_opt() const {
    return project_end >= 0 ? std::optional<int>(project_end) : std::nullopt;
  }
};

void add_schedule_options(CLI::App* cmd, CommonScheduleArgs& args,
                          bool required = true) {
  auto* tasks = cmd->add_option("--tasks", args.tasks_path, "tasks CSV");
  auto* edges = cmd->add_option("--edges", args.edges_path, "edges CSV");
  if (required) {
    tasks->required();
    edges->required();
  }
  cmd->add_option("--project-end", args.project_end,
                  "delivery date override (day index)");
  cmd->add_flag("--allow-overlap", args.allow_overlap,
                "accept edges whose predecessor ends after the successor "
                "starts (negative slack counts as zero float)");
}

// ----------------------------------------------------------------- stats

int run_stats(const CommonScheduleArgs& sched, const std::string& out_dir) {
  ManifestWriter manifests("stats");
  manifests.add_input(sched.tasks_path);
  manifests.add_input(sched.edges_path);
  manifests.set_config({
      {"tasks", sched.tasks_path},
      {"edges", sched.edges_path},
      {"project-end", std::to_string(sched.project_end)},
      {"allow-overlap", sched.allow_overlap ? "1" : "0"},
  });

  const ActivityNetwork net =
      load_network(sched.tasks_path, sched.edges_path, sched.project_end_opt(),
                   sched.allow_overlap);
  const NetworkStats stats = summary_stats(net);
  fs::create_directories(out_dir);

  const std::string stats_path = (fs::path(out_dir) / "stats.csv").string();
  {
    auto out = open_output(stats_path);
    out << "metric,value\n";
    out << "n_nodes," << stats.n_nodes << '\n';
    out << "n_edges," << stats.n_edges << '\n';
    out << "project_end," << stats.project_end << '\n';
    out << "project_span_days," << stats.project_span_days << '\n';
    const std::pair<const char*, const Moments*> groups[] = {
        {"in_degree", &stats.in_degree},
        {"out_degree", &stats.out_degree},
        {"inter_event", &stats.inter_event},
        {"duration", &stats.duration},
    };
    for (const auto& [name, m] : groups) {
      out << name << "_mean," << format_double(m->mean) << '\n';
      out << name << "_std," << format_double(m->std_dev) << '\n';
      out << name << "_min," << m->min << '\n';
      out << name << "_max," << m->max << '\n';
    }
    out << "in_degree_zero_count," << stats.in_degree_zero << '\n';
    out << "out_degree_zero_count," << stats.out_degree_zero << '\n';
  }
  manifests.finish_output(stats_path);

  std::vector<long> in_deg, out_deg, durations, floats;
  for (int i = 0; i < net.node_count(); ++i) {
    in_deg.push_back(net.in_degree(i));
    out_deg.push_back(net.out_degree(i));
    durations.push_back(net.duration(i));
    for (int j : net.out_neighbors(i)) floats.push_back(net.free_float(i, j));
  }
  write_survival((fs::path(out_dir) / "survival_in_degree.csv").string(),
                 in_deg, manifests);
  write_survival((fs::path(out_dir) / "survival_out_degree.csv").string(),
                 out_deg, manifests);
  if (!floats.empty()) {
    write_survival((fs::path(out_dir) / "survival_inter_event.csv").string(),
                   floats, manifests);
  }
  write_survival((fs::path(out_dir) / "survival_duration.csv").string(),
                 durations, manifests);

  const std::string completion_path =
      (fs::path(out_dir) / "completion_by_day.csv").string();
  {
    auto out = open_output(completion_path);
    out << "day,completed_fraction\n";
    for (std::size_t t = 0; t < stats.completion_by_day.size(); ++t) {
      out << t << ',' << format_double(stats.completion_by_day[t]) << '\n';
    }
  }
  manifests.finish_output(completion_path);
  return 0;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  CommonScheduleArgs sched;
  std::string out_dir;
  std::string out_name = "results.csv";
  std::string schemes =
      "out-degree,out-component,duration,start-date,end-date,random";
  std::string q0 =
      "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55,0.6,0.65,0.7,0.75,"
      "0.8,0.85,0.9,0.95,1";
  std::string tau_tilde = "1,10,100,1000";
  std::string gamma = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  int runs = 100;
  std::uint64_t seed = 0;
  std::string date_order = "default";
  int threads = 0;
  bool per_run_ratio = false;
  bool exclude_empty_seeds = false;
  std::string config_path;
};

// Flat key=value file mirroring the sweep flags. Command-line flags take
// precedence; file entries override the built-in defaults.
void apply_config_file(const std::string& path, CLI::App* cmd,
                       SweepArgs& args) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  }
  const std::map<std::string, std::function<void(const std::string&)>>
      setters = {
          {"tasks", [&](const std::string& v) { args.sched.tasks_path = v; }},
          {"edges", [&](const std::string& v) { args.sched.edges_path = v; }},
          {"project-end",
           [&](const std::string& v) { args.sched.project_end = std::stoi(v); }},
          {"allow-overlap",
           [&](const std::string& v) { args.sched.allow_overlap = v == "1" || v == "true"; }},
          {"out-dir", [&](const std::string& v) { args.out_dir = v; }},
          {"out", [&](const std::string& v) { args.out_name = v; }},
          {"schemes", [&](const std::string& v) { args.schemes = v; }},
          {"q0", [&](const std::string& v) { args.q0 = v; }},
          {"tau-tilde", [&](const std::string& v) { args.tau_tilde = v; }},
          {"gamma", [&](const std::string& v) { args.gamma = v; }},
          {"runs", [&](const std::string& v) { args.runs = std::stoi(v); }},
          {"seed", [&](const std::string& v) { args.seed = std::stoull(v); }},
          {"date-order", [&](const std::string& v) { args.date_order = v; }},
          {"threads", [&](const std::string& v) { args.threads = std::stoi(v); }},
          {"per-run-ratio",
           [&](const std::string& v) { args.per_run_ratio = v == "1" || v == "true"; }},
          {"exclude-empty-seeds",
           [&](const std::string& v) { args.exclude_empty_seeds = v == "1" || v == "true"; }},
      };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config, path + ":" + std::to_string(line_no) +
                                         ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorKind::Config,
                  path + ":" + std::to_string(line_no) + ": unknown key '" +
                      key + "'");
    }
    if (cmd->count("--" + key) > 0) continue;  // flags win
    try {
      it->second(value);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, path + ":" + std::to_string(line_no) +
                                         ": bad value '" + value + "'");
    }
  }
}

SweepConfig resolve_sweep_config(const SweepArgs& args) {
  SweepConfig config;
  config.q0_grid = parse_double_list(args.q0, "--q0");
  config.tau_grid = parse_double_list(args.tau_tilde, "--tau-tilde");
  config.gamma_grid = parse_double_list(args.gamma, "--gamma");

  std::optional<DateOrder> forced_order;
  if (args.date_order == "latest") {
    forced_order = DateOrder::LatestFirst;
  } else if (args.date_order == "earliest") {
    forced_order = DateOrder::EarliestFirst;
  } else if (args.date_order != "default") {
    throw Error(ErrorKind::Config,
                "--date-order must be latest, earliest or default, got '" +
                    args.date_order + "'");
  }
  std::stringstream ss(args.schemes);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const SchemeKind kind = scheme_from_name(item);
    config.schemes.push_back(
        {kind, forced_order.value_or(default_date_order(kind))});
  }
  if (config.schemes.empty()) {
    throw Error(ErrorKind::Config, "--schemes: empty list");
  }
  config.n_runs = args.runs;
  config.master_seed = args.seed;
  config.per_run_ratio = args.per_run_ratio;
  config.exclude_empty_seeds = args.exclude_empty_seeds;
  config.threads = args.threads;
  config.validate();
  return config;
}

int run_sweep(const SweepArgs& args) {
  const SweepConfig config = resolve_sweep_config(args);
  ManifestWriter manifests("sweep");
  manifests.add_input(args.sched.tasks_path);
  manifests.add_input(args.sched.edges_path);

  std::string scheme_names;
  for (std::size_t i = 0; i < config.schemes.size(); ++i) {
    if (i) scheme_names += ',';
    scheme_names += scheme_name(config.schemes[i].kind);
  }
  manifests.set_config({
      {"tasks", args.sched.tasks_path},
      {"edges", args.sched.edges_path},
      {"project-end", std::to_string(args.sched.project_end)},
      {"allow-overlap", args.sched.allow_overlap ? "1" : "0"},
      {"schemes", scheme_names},
      {"q0", join_doubles(config.q0_grid)},
      {"tau-tilde", join_doubles(config.tau_grid)},
      {"gamma", join_doubles(config.gamma_grid)},
      {"runs", std::to_string(config.n_runs)},
      {"seed", std::to_string(config.master_seed)},
      {"date-order", args.date_order},
      {"threads", std::to_string(config.threads)},
      {"per-run-ratio", config.per_run_ratio ? "1" : "0"},
      {"exclude-empty-seeds", config.exclude_empty_seeds ? "1" : "0"},
      {"out", args.out_name},
  });

  const ActivityNetwork net =
      load_network(args.sched.tasks_path, args.sched.edges_path,
                   args.sched.project_end_opt(), args.sched.allow_overlap);

  // Slice per (tau, q0) pair for the progress line; concatenated rows
  // match a single full sweep because cells are independent.
  ResultsTable table;
  const std::size_t total_pairs =
      config.tau_grid.size() * config.q0_grid.size();
  std::size_t done = 0;
  for (double tau : config.tau_grid) {
    for (double q0 : config.q0_grid) {
      SweepConfig slice = config;
      slice.tau_grid = {tau};
      slice.q0_grid = {q0};
      ResultsTable part = sweep(net, slice);
      table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
      ++done;
      if (isatty(fileno(stderr))) {
        std::cerr << "sweep: " << done << '/' << total_pairs
                  << " parameter cells\r" << std::flush;
      }
    }
  }
  if (isatty(fileno(stderr))) std::cerr << '\n';
  std::cerr << "sweep: " << done << '/' << total_pairs
            << " parameter cells done\n";

  fs::create_directories(args.out_dir);
  const std::string out_path = (fs::path(args.out_dir) / args.out_name).string();
  {
    auto out = open_output(out_path);
    write_results_csv(out, table);
  }
  manifests.finish_output(out_path);
  return 0;
}

// --------------------------------------------------------------- bestmap

int run_bestmap(const std::string& results_path, const std::string& metric,
                double threshold, const std::string& out_path) {
  ManifestWriter manifests("bestmap");
  manifests.add_input(results_path);
  manifests.set_config({
      {"results", results_path},
      {"metric", metric},
      {"threshold", format_double(threshold)},
      {"out", out_path},
  });
  auto in = open_input(results_path);
  const ResultsTable table = read_results_csv(in);
  const BestSchemeMap map =
      best_scheme_map(table, metric_from_name(metric), threshold);
  if (const auto parent = fs::path(out_path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  {
    auto out = open_output(out_path);
    write_bestmap_csv(out, map);
  }
  manifests.finish_output(out_path);
  return 0;
}

// --------------------------------------------------------------- cascade

int run_cascade_cmd(const CommonScheduleArgs& sched, const std::string& seed_id,
                    double q0, double tau_tilde, int runs,
                    std::uint64_t master_seed) {
  const ActivityNetwork net =
      load_network(sched.tasks_path, sched.edges_path, sched.project_end_opt(),
                   sched.allow_overlap);
  const CascadeParams params{q0, tau_tilde};
  params.validate();
  const int seed = net.index_of(seed_id);

  const CascadeOutcome outcome =
      run_cascade(net, seed, params, RngStream(master_seed, seed, 0));
  std::cout << "seed: " << seed_id << "\n"
            << "q0: " << format_double(q0)
            << "  tau_tilde: " << format_double(tau_tilde)
            << "  master_seed: " << master_seed << "\n"
            << "out_component_size: " << net.out_component(seed).size() << "\n"
            << "run 0 affected (" << outcome.size << " incl. seed, "
            << outcome.size - 1 << " excl.):";
  for (int i = 0; i < net.node_count(); ++i) {
    if (outcome.states[i]) std::cout << ' ' << net.id_of(i);
  }
  std::cout << '\n';
  if (runs > 1) {
    const double mean = mean_cascade_size(net, seed, params, runs, master_seed);
    std::cout << "mean size over " << runs << " runs: " << format_double(mean)
              << " (excl. seed: " << format_double(mean - 1.0) << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- toygen

int run_toygen(const std::string& kind, const std::string& out_dir, int n,
               double edge_prob, int horizon, std::uint64_t seed) {
  ActivityNetwork net = [&] {
    if (kind == "fig3") return make_fig3();
    if (kind == "chain") return make_chain(n);
    if (kind == "diamond") return make_diamond();
    if (kind == "random-dag") return make_random_dag(n, edge_prob, horizon, seed);
    throw Error(ErrorKind::Config, "unknown toygen kind '" + kind + "'");
  }();

  ManifestWriter manifests("toygen");
  manifests.set_config({
      {"kind", kind},
      {"n", std::to_string(n)},
      {"edge-prob", format_double(edge_prob)},
      {"horizon", std::to_string(horizon)},
      {"seed", std::to_string(seed)},
  });
  fs::create_directories(out_dir);
  const std::string tasks_path = (fs::path(out_dir) / "tasks.csv").string();
  const std::string edges_path = (fs::path(out_dir) / "edges.csv").string();
  {
    auto tasks_out = open_output(tasks_path);
    auto edges_out = open_output(edges_path);
    serialize_schedule(net, tasks_out, edges_out);
  }
  manifests.finish_output(tasks_path);
  manifests.finish_output(edges_path);
  return 0;
}

// ---------------------------------------------------------------- ingest

int run_ingest(const std::string& nodes_path, const std::string& edges_path,
               const std::string& out_dir) {
  ManifestWriter manifests("ingest");
  manifests.add_input(nodes_path);
  manifests.add_input(edges_path);
  manifests.set_config({
      {"nodes", nodes_path},
      {"edges", edges_path},
  });
  auto nodes_in = open_input(nodes_path);
  auto edges_in = open_input(edges_path);
  fs::create_directories(out_dir);
  const std::string tasks_path = (fs::path(out_dir) / "tasks.csv").string();
  const std::string edges_out_path = (fs::path(out_dir) / "edges.csv").string();
  {
    auto tasks_out = open_output(tasks_path);
    auto edges_out = open_output(edges_out_path);
    ingest_dataset(nodes_in, edges_in, tasks_out, edges_out);
  }
  manifests.finish_output(tasks_path);
  manifests.finish_output(edges_out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascading-failure simulation on time-stamped activity networks"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "network statistics and survival curves");
  CommonScheduleArgs stats_args;
  std::string stats_out_dir;
  add_schedule_options(stats_cmd, stats_args);
  stats_cmd->add_option("--out-dir", stats_out_dir, "output directory")
      ->required();

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "R1/R2 over a (scheme, q0, tau, gamma) grid");
  SweepArgs sweep_args;
  add_schedule_options(sweep_cmd, sweep_args.sched, /*required=*/false);
  sweep_cmd->add_option("--out-dir", sweep_args.out_dir, "output directory");
  sweep_cmd->add_option("--out", sweep_args.out_name, "results file name");
  sweep_cmd->add_option("--schemes", sweep_args.schemes,
                        "comma-separated scheme names");
  sweep_cmd->add_option("--q0", sweep_args.q0, "comma-separated q0 grid");
  sweep_cmd->add_option("--tau-tilde", sweep_args.tau_tilde,
                        "comma-separated tau-tilde grid");
  sweep_cmd->add_option("--gamma", sweep_args.gamma,
                        "comma-separated gamma grid");
  sweep_cmd->add_option("--runs", sweep_args.runs, "cascade runs per seed");
  sweep_cmd->add_option("--seed", sweep_args.seed, "master seed");
  sweep_cmd->add_option("--date-order", sweep_args.date_order,
                        "default|latest|earliest (start/end-date schemes)");
  sweep_cmd->add_option("--threads", sweep_args.threads,
                        "worker threads (0 = all hardware threads)");
  sweep_cmd->add_flag("--per-run-ratio", sweep_args.per_run_ratio,
                      "R1 averages per-run ratios instead of per-seed means");
  sweep_cmd->add_flag("--exclude-empty-seeds", sweep_args.exclude_empty_seeds,
                      "drop seeds with no downstream tasks from averages");
  sweep_cmd->add_option("--config", sweep_args.config_path,
                        "key=value file mirroring the flags");

  // bestmap
  auto* bestmap_cmd =
      app.add_subcommand("bestmap", "best scheme per parameter cell");
  std::string bm_results, bm_metric = "R1", bm_out;
  double bm_threshold = 0.01;
  bestmap_cmd->add_option("--results", bm_results, "sweep results CSV")
      ->required();
  bestmap_cmd->add_option("--metric", bm_metric, "R1 or R2");
  bestmap_cmd->add_option("--threshold", bm_threshold,
                          "relative spread below which no winner is declared");
  bestmap_cmd->add_option("--out", bm_out, "output CSV path")->required();

  // cascade
  auto* cascade_cmd =
      app.add_subcommand("cascade", "single-seed debug cascade");
  CommonScheduleArgs cascade_args;
  std::string cascade_seed_id;
  double cascade_q0 = 0.5, cascade_tau = 10.0;
  int cascade_runs = 1;
  std::uint64_t cascade_master = 0;
  add_schedule_options(cascade_cmd, cascade_args);
  cascade_cmd->add_option("--seed-task", cascade_seed_id, "seed task id")
      ->required();
  cascade_cmd->add_option("--q0", cascade_q0, "propagation probability at zero float");
  cascade_cmd->add_option("--tau-tilde", cascade_tau, "float sensitivity scale");
  cascade_cmd->add_option("--runs", cascade_runs, "runs for the mean size");
  cascade_cmd->add_option("--seed", cascade_master, "master seed");

  // toygen
  auto* toygen_cmd = app.add_subcommand("toygen", "generate fixture networks");
  std::string toy_kind, toy_out_dir;
  int toy_n = 7, toy_horizon = 100;
  double toy_edge_prob = 0.2;
  std::uint64_t toy_seed = 0;
  toygen_cmd->add_option("--kind", toy_kind, "fig3|chain|diamond|random-dag")
      ->required();
  toygen_cmd->add_option("--out-dir", toy_out_dir, "output directory")
      ->required();
  toygen_cmd->add_option("--n", toy_n, "task count (chain, random-dag)");
  toygen_cmd->add_option("--edge-prob", toy_edge_prob,
                         "edge probability (random-dag)");
  toygen_cmd->add_option("--horizon", toy_horizon, "day horizon (random-dag)");
  toygen_cmd->add_option("--seed", toy_seed, "generator seed (random-dag)");

  // ingest
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "convert the published dataset files to the canonical CSVs");
  std::string ingest_nodes, ingest_edges, ingest_out_dir;
  ingest_cmd->add_option("--nodes", ingest_nodes, "published nodes.csv")
      ->required();
  ingest_cmd->add_option("--edges", ingest_edges, "published edges.csv")
      ->required();
  ingest_cmd->add_option("--out-dir", ingest_out_dir, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 1;
  }

  try {
    if (stats_cmd->parsed()) return run_stats(stats_args, stats_out_dir);
    if (sweep_cmd->parsed()) {
      if (!sweep_args.config_path.empty()) {
        apply_config_file(sweep_args.config_path, sweep_cmd, sweep_args);
      }
      for (const auto& [value, flag] :
           {std::pair<const std::string&, const char*>{
                sweep_args.sched.tasks_path, "--tasks"},
            {sweep_args.sched.edges_path, "--edges"},
            {sweep_args.out_dir, "--out-dir"}}) {
        if (value.empty()) {
          throw Error(ErrorKind::Config,
                      std::string(flag) + " is required (flag or config)");
        }
      }
      return run_sweep(sweep_args);
    }
    if (bestmap_cmd->parsed())
      return run_bestmap(bm_results, bm_metric, bm_threshold, bm_out);
    if (cascade_cmd->parsed())
      return run_cascade_cmd(cascade_args, cascade_seed_id, cascade_q0,
                             cascade_tau, cascade_runs, cascade_master);
    if (toygen_cmd->parsed())
      return run_toygen(toy_kind, toy_out_dir, toy_n, toy_edge_prob,
                        toy_horizon, toy_seed);
    if (ingest_cmd->parsed())
      return run_ingest(ingest_nodes, ingest_edges, ingest_out_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Domain)
               ? 1
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
