#pragma once

#include <stdexcept>
#include <string>

namespace actnet {

enum class ErrorKind {
  Parse,       // malformed input row or header
  Reference,   // edge endpoint does not resolve to a task
  Cycle,       // dependency graph is not acyclic
  Precedence,  // edge with end_i > start_j in strict mode
  Lookup,      // unknown task id or non-existent edge
  Domain,      // argument outside its valid range
  Capacity,    // enumeration bound exceeded
  Io,          // file open/read/write failure
  Config,      // invalid configuration value
  IncompleteTable,  // results table missing (scheme, cell) rows
  Generation,  // toy generator produced an invalid schedule
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace actnet
