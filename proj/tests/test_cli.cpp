#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "actnet/manifest.hpp"

namespace fs = std::filesystem;

namespace {

const char* kCli = ACTNET_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() /
                       ("actnet_cli_log_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd =
      std::string(kCli) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream buffer;
  buffer << in.rdbuf();
  fs::remove(log);
  return {WEXITSTATUS(status), buffer.str()};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("actnet_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("missing input file exits 2 and names the path") {
  const auto result = run_cli("stats --tasks /nonexistent/tasks.csv "
                              "--edges /nonexistent/edges.csv --out-dir /tmp/x");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("/nonexistent/tasks.csv") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("sweep --tasks a --edges b --out-dir c --q0 abc").exit_code == 1);
  CHECK(run_cli("definitely-not-a-command").exit_code == 1);
  const auto bad_order = run_cli("sweep --tasks a --edges b --out-dir c "
                                 "--date-order sideways");
  CHECK(bad_order.exit_code == 1);
}

TEST_CASE("toygen fixtures and stats on fig3") {
  const fs::path dir = fresh_dir("fig3");
  REQUIRE(run_cli("toygen --kind fig3 --out-dir " + dir.string()).exit_code == 0);
  const fs::path stats_dir = dir / "stats";
  REQUIRE(run_cli("stats --tasks " + (dir / "tasks.csv").string() +
                  " --edges " + (dir / "edges.csv").string() + " --out-dir " +
                  stats_dir.string())
              .exit_code == 0);
  const std::string stats = read_file(stats_dir / "stats.csv");
  CHECK(stats.find("n_nodes,7\n") != std::string::npos);
  CHECK(stats.find("n_edges,6\n") != std::string::npos);
  CHECK(fs::exists(stats_dir / "survival_inter_event.csv"));
  CHECK(fs::exists(stats_dir / "completion_by_day.csv"));
  CHECK(fs::exists(stats_dir / "stats.csv.manifest.json"));
}

TEST_CASE("toygen rejects invalid parameters") {
  const fs::path dir = fresh_dir("badtoy");
  CHECK(run_cli("toygen --kind chain --n 0 --out-dir " + dir.string())
            .exit_code == 2);
  CHECK(run_cli("toygen --kind nope --out-dir " + dir.string()).exit_code == 1);
}

TEST_CASE("random-dag generation is reproducible byte for byte") {
  const fs::path a = fresh_dir("dag_a"), b = fresh_dir("dag_b");
  REQUIRE(run_cli("toygen --kind random-dag --n 30 --seed 7 --out-dir " +
                  a.string()).exit_code == 0);
  REQUIRE(run_cli("toygen --kind random-dag --n 30 --seed 7 --out-dir " +
                  b.string()).exit_code == 0);
  CHECK(read_file(a / "tasks.csv") == read_file(b / "tasks.csv"));
  CHECK(read_file(a / "edges.csv") == read_file(b / "edges.csv"));
}

TEST_CASE("sweep determinism, identity values and manifest replay") {
  const fs::path dir = fresh_dir("sweep");
  REQUIRE(run_cli("toygen --kind fig3 --out-dir " + dir.string()).exit_code == 0);
  const std::string inputs = " --tasks " + (dir / "tasks.csv").string() +
                             " --edges " + (dir / "edges.csv").string();

  const std::string flags =
      " --q0 0.3,0.8 --tau-tilde 2 --gamma 0,1 --runs 30 --seed 42";
  REQUIRE(run_cli("sweep" + inputs + flags + " --out-dir " +
                  (dir / "r1").string()).exit_code == 0);
  REQUIRE(run_cli("sweep" + inputs + flags + " --out-dir " +
                  (dir / "r2").string()).exit_code == 0);
  const std::string csv1 = read_file(dir / "r1" / "results.csv");
  CHECK(csv1 == read_file(dir / "r2" / "results.csv"));

  // q0 = 0 forces every reported value to exactly 1.
  REQUIRE(run_cli("sweep" + inputs +
                  " --q0 0 --tau-tilde 2 --gamma 0.5 --runs 5 --out-dir " +
                  (dir / "zero").string()).exit_code == 0);
  std::istringstream zero(read_file(dir / "zero" / "results.csv"));
  std::string line;
  std::getline(zero, line);  // header
  while (std::getline(zero, line)) {
    if (line.rfind("R1,", 0) == 0 || line.rfind("R2,", 0) == 0) {
      CHECK(line.find(",1,") != std::string::npos);
    }
  }

  // Rebuild the command from the manifest's resolved config; the output
  // must reproduce bit for bit.
  const auto manifest = actnet::read_manifest(
      (dir / "r1" / "results.csv.manifest.json").string());
  CHECK(manifest.command == "sweep");
  CHECK(manifest.tool_version == std::string("0.1.0"));
  std::string replay = "sweep";
  for (const auto& [key, value] : manifest.config) {
    if (key == "allow-overlap" || key == "per-run-ratio" ||
        key == "exclude-empty-seeds") {
      if (value == "1") replay += " --" + key;
      continue;
    }
    if (key == "out") continue;
    replay += " --" + key + " " + value;
  }
  replay += " --out-dir " + (dir / "replay").string();
  REQUIRE(run_cli(replay).exit_code == 0);
  CHECK(read_file(dir / "replay" / "results.csv") == csv1);
}

TEST_CASE("config file mirrors flags, flags take precedence") {
  const fs::path dir = fresh_dir("config");
  REQUIRE(run_cli("toygen --kind fig3 --out-dir " + dir.string()).exit_code == 0);
  {
    std::ofstream cfg(dir / "sweep.cfg");
    cfg << "# fixture sweep\n"
        << "tasks=" << (dir / "tasks.csv").string() << "\n"
        << "edges=" << (dir / "edges.csv").string() << "\n"
        << "q0=0.25,0.75\n"
        << "tau-tilde=3\n"
        << "gamma=1\n"
        << "runs=12\n"
        << "seed=77\n";
  }
  REQUIRE(run_cli("sweep --config " + (dir / "sweep.cfg").string() +
                  " --out-dir " + (dir / "out").string()).exit_code == 0);
  const std::string csv = read_file(dir / "out" / "results.csv");
  CHECK(csv.find("R1,out-degree,0.25,3,1,") != std::string::npos);
  CHECK(csv.find(",12,77\n") != std::string::npos);

  // A flag overrides the file entry for the same key.
  REQUIRE(run_cli("sweep --config " + (dir / "sweep.cfg").string() +
                  " --q0 0.5 --out-dir " + (dir / "out2").string())
              .exit_code == 0);
  const std::string csv2 = read_file(dir / "out2" / "results.csv");
  CHECK(csv2.find(",0.25,") == std::string::npos);
  CHECK(csv2.find("R1,out-degree,0.5,3,1,") != std::string::npos);

  // Unknown keys are configuration errors.
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "nonsense=1\n";
  }
  CHECK(run_cli("sweep --config " + (dir / "bad.cfg").string() +
                " --tasks a --edges b --out-dir c").exit_code == 1);
  // Missing required inputs are reported when neither flag nor config
  // provides them.
  CHECK(run_cli("sweep --out-dir " + (dir / "out3").string()).exit_code == 1);
}

TEST_CASE("bestmap consumes sweep output and honours the threshold") {
  const fs::path dir = fresh_dir("bestmap");
  REQUIRE(run_cli("toygen --kind fig3 --out-dir " + dir.string()).exit_code == 0);
  const std::string inputs = " --tasks " + (dir / "tasks.csv").string() +
                             " --edges " + (dir / "edges.csv").string();
  REQUIRE(run_cli("sweep" + inputs +
                  " --q0 0.4,0.9 --tau-tilde 3 --gamma 1 --runs 40 --seed 8"
                  " --out-dir " + dir.string()).exit_code == 0);

  const std::string results = (dir / "results.csv").string();
  REQUIRE(run_cli("bestmap --results " + results + " --metric R1 --out " +
                  (dir / "map.csv").string()).exit_code == 0);
  const std::string map = read_file(dir / "map.csv");
  CHECK(map.rfind("metric,tau_tilde,q0,gamma,best_scheme\n", 0) == 0);

  REQUIRE(run_cli("bestmap --results " + results +
                  " --metric R1 --threshold 1.0 --out " +
                  (dir / "blank.csv").string()).exit_code == 0);
  std::istringstream blank(read_file(dir / "blank.csv"));
  std::string line;
  std::getline(blank, line);
  int rows = 0;
  while (std::getline(blank, line)) {
    ++rows;
    CHECK(line.find("UNSPECIFIED") != std::string::npos);
  }
  CHECK(rows == 2);

  // A single-scheme table cannot be ranked.
  REQUIRE(run_cli("sweep" + inputs +
                  " --schemes end-date --q0 0.4 --tau-tilde 3 --gamma 1"
                  " --runs 10 --out-dir " + (dir / "single").string())
              .exit_code == 0);
  const auto failed = run_cli("bestmap --results " +
                              (dir / "single" / "results.csv").string() +
                              " --metric R1 --out " + (dir / "nope.csv").string());
  CHECK(failed.exit_code == 2);
}

TEST_CASE("cascade debug run prints the outcome") {
  const fs::path dir = fresh_dir("cascade");
  REQUIRE(run_cli("toygen --kind fig3 --out-dir " + dir.string()).exit_code == 0);
  const auto result =
      run_cli("cascade --tasks " + (dir / "tasks.csv").string() + " --edges " +
              (dir / "edges.csv").string() +
              " --seed-task v1 --q0 1 --tau-tilde 100000 --runs 10");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("seed: v1") != std::string::npos);
  CHECK(result.output.find("out_component_size: 6") != std::string::npos);
  // q0 = 1 with a huge scale affects everything.
  CHECK(result.output.find("(7 incl. seed, 6 excl.)") != std::string::npos);
  CHECK(result.output.find("mean size over 10 runs: 7") != std::string::npos);

  const auto unknown =
      run_cli("cascade --tasks " + (dir / "tasks.csv").string() + " --edges " +
              (dir / "edges.csv").string() + " --seed-task zz");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("ingest converts the published dataset layout") {
  const fs::path raw = fs::path(ACTNET_DATA_DIR) / "raw";
  if (!fs::exists(raw / "nodes.csv")) {
    return;  // dataset not vendored; covered by the acceptance suite
  }
  const fs::path dir = fresh_dir("ingest");
  REQUIRE(run_cli("ingest --nodes " + (raw / "nodes.csv").string() +
                  " --edges " + (raw / "edges.csv").string() + " --out-dir " +
                  dir.string()).exit_code == 0);
  const std::string tasks = read_file(dir / "tasks.csv");
  CHECK(tasks.rfind("task_id,start_day,end_day\n", 0) == 0);
  // Row positions resolve to task ids, including past gaps in the id
  // sequence: row 26 holds task id 27.
  const std::string edges = read_file(dir / "edges.csv");
  CHECK(edges.rfind("source_id,target_id\n", 0) == 0);

  const fs::path stats_dir = dir / "stats";
  REQUIRE(run_cli("stats --tasks " + (dir / "tasks.csv").string() +
                  " --edges " + (dir / "edges.csv").string() +
                  " --allow-overlap --out-dir " + stats_dir.string())
              .exit_code == 0);
  const std::string stats = read_file(stats_dir / "stats.csv");
  CHECK(stats.find("n_nodes,723\n") != std::string::npos);
  CHECK(stats.find("n_edges,1220\n") != std::string::npos);

  // Without --allow-overlap the real export is rejected loudly.
  CHECK(run_cli("stats --tasks " + (dir / "tasks.csv").string() + " --edges " +
                (dir / "edges.csv").string() + " --out-dir " +
                (dir / "strict").string()).exit_code == 2);
}
