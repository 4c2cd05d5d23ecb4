#ifndef JALE_MANIFEST_HPP
#define JALE_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jale/config.hpp"
#include "jale/types.hpp"

namespace jale {

std::string hex64(uint64_t value);

// Content hash used to stamp outputs: FNV-1a over the canonical document.
std::string config_hash(const JaleConfig& config);
std::string content_hash(const std::string& bytes);
std::string file_hash(const std::string& path);

// Reproducibility envelope written next to every CLI output.
struct RunManifest {
  std::string command;
  std::string config_hash;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;   // (path, hash)
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, hash)
  std::vector<std::string> warnings;

  std::string to_json() const;
  void write(const std::string& output_path) const;  // writes <output_path>.run.json
};

}  // namespace jale

#endif
