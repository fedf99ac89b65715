#pragma once

#include <istream>
#include <string>
#include <vector>

#include "actnet/error.hpp"

namespace actnet {

// Minimal comma-separated reader for the flat files this project uses.
// No quoting: task ids must not contain commas. Tracks line numbers so
// parse errors can point at the offending row.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next non-empty line split on commas. Returns false at EOF.
  bool next_row(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t pos = 0;
      while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
          fields.push_back(line.substr(pos));
          break;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
      }
      return true;
    }
    return false;
  }

  // Consumes the first row and checks it against the expected header.
  void expect_header(const std::string& expected) {
    std::vector<std::string> fields;
    if (!next_row(fields)) {
      throw Error(ErrorKind::Parse, "missing header, expected '" + expected + "'");
    }
    std::string got;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) got += ',';
      got += fields[i];
    }
    if (got != expected) {
      throw Error(ErrorKind::Parse, "bad header '" + got + "', expected '" +
                                        expected + "'");
    }
  }

  long line_number() const { return line_number_; }

  long parse_int(const std::string& field) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_number_) +
                                        ": expected integer, got '" + field +
                                        "'");
    }
    return value;
  }

 private:
  std::istream& in_;
  long line_number_ = 0;
};

}  // namespace actnet
