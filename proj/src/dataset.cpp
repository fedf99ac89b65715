#include "actnet/dataset.hpp"

#include "actnet/csv.hpp"

namespace actnet {

namespace {

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
  return s.substr(a, b - a);
}

}  // namespace

void read_dataset(std::istream& nodes_source, std::istream& edges_source,
                  std::vector<Task>& tasks, std::vector<EdgeSpec>& edges) {
  tasks.clear();
  edges.clear();
  {
    CsvReader csv(nodes_source);
    std::vector<std::string> row;
    if (!csv.next_row(row) || row.empty() || trimmed(row[0]) != "Task ID") {
      throw Error(ErrorKind::Parse,
                  "nodes file: expected a header starting with 'Task ID'");
    }
    while (csv.next_row(row)) {
      if (row.size() != 5) {
        throw Error(ErrorKind::Parse,
                    "nodes line " + std::to_string(csv.line_number()) +
                        ": expected 5 fields, got " +
                        std::to_string(row.size()));
      }
      Task t;
      t.id = trimmed(row[0]);
      t.start = static_cast<int>(csv.parse_int(trimmed(row[3])));
      t.end = static_cast<int>(csv.parse_int(trimmed(row[4])));
      tasks.push_back(std::move(t));
    }
  }
  {
    CsvReader csv(edges_source);
    csv.expect_header("From,To");
    std::vector<std::string> row;
    while (csv.next_row(row)) {
      if (row.size() != 2) {
        throw Error(ErrorKind::Parse,
                    "edges line " + std::to_string(csv.line_number()) +
                        ": expected 2 fields, got " +
                        std::to_string(row.size()));
      }
      const long from = csv.parse_int(trimmed(row[0]));
      const long to = csv.parse_int(trimmed(row[1]));
      const long n = static_cast<long>(tasks.size());
      if (from < 1 || from > n || to < 1 || to > n) {
        throw Error(ErrorKind::Reference,
                    "edges line " + std::to_string(csv.line_number()) +
                        ": row position out of range (" +
                        std::to_string(from) + ", " + std::to_string(to) +
                        ")");
      }
      edges.push_back({tasks[from - 1].id, tasks[to - 1].id});
    }
  }
}

ActivityNetwork load_dataset(std::istream& nodes_source,
                             std::istream& edges_source) {
  std::vector<Task> tasks;
  std::vector<EdgeSpec> edges;
  read_dataset(nodes_source, edges_source, tasks, edges);
  return ActivityNetwork::from_parts(std::move(tasks), edges, {},
                                     /*strict=*/false);
}

void ingest_dataset(std::istream& nodes_source, std::istream& edges_source,
                    std::ostream& tasks_out, std::ostream& edges_out) {
  std::vector<Task> tasks;
  std::vector<EdgeSpec> edges;
  read_dataset(nodes_source, edges_source, tasks, edges);
  tasks_out << "task_id,start_day,end_day\n";
  for (const Task& t : tasks) {
    tasks_out << t.id << ',' << t.start << ',' << t.end << '\n';
  }
  edges_out << "source_id,target_id\n";
  for (const EdgeSpec& e : edges) {
    edges_out << e.source << ',' << e.target << '\n';
  }
}

}  // namespace actnet
