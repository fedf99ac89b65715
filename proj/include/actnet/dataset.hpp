#pragma once

#include <istream>
#include <ostream>

#include "actnet/schedule.hpp"

namespace actnet {

// Adapter for the published activity-network dataset (nodes.csv +
// edges.csv). nodes.csv carries five columns: task id, calendar start and
// end dates, and integer day offsets since the project start; the offsets
// are what this project consumes. edges.csv references tasks by 1-based
// row position in nodes.csv, not by task id, so the adapter resolves
// positions back to ids.
//
// Real exports contain edges whose predecessor ends after the successor
// starts; the networks are therefore loaded in non-strict mode and
// free floats clamp at zero.

struct DatasetRow {
  std::string task_id;
  int start = 0;
  int end = 0;
};

// Parses the published nodes.csv / edges.csv into canonical task and edge
// lists. Throws Parse/Reference errors with line numbers.
void read_dataset(std::istream& nodes_source, std::istream& edges_source,
                  std::vector<Task>& tasks, std::vector<EdgeSpec>& edges);

ActivityNetwork load_dataset(std::istream& nodes_source,
                             std::istream& edges_source);

// Writes the canonical tasks/edges CSVs for the published files.
void ingest_dataset(std::istream& nodes_source, std::istream& edges_source,
                    std::ostream& tasks_out, std::ostream& edges_out);

}  // namespace actnet
