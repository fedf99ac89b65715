#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace actnet {

// Reproducibility record written next to every output file. The resolved
// configuration holds every knob needed to regenerate the output
// bit-exactly with the same tool version.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::map<std::string, std::string> config;  // resolved key=value
  std::map<std::string, std::string> inputs;  // path -> content digest
  std::map<std::string, std::string> outputs;
  double wall_seconds = 0.0;
  std::string created_utc;
};

// FNV-1a 64-bit content digest, hex-encoded. Throws Io if the file cannot
// be read.
std::string file_digest(const std::string& path);

std::string manifest_path_for(const std::string& output_path);

// Writes `<output>.manifest.json`.
void write_manifest(const RunManifest& manifest,
                    const std::string& output_path);

RunManifest read_manifest(const std::string& manifest_path);

}  // namespace actnet
