#include "jale/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jale/rng.hpp"
#include "json.hpp"

namespace jale {

using nlohmann::json;

std::string hex64(uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string content_hash(const std::string& bytes) { return "fnv1a:" + hex64(fnv1a64(bytes)); }

std::string config_hash(const JaleConfig& config) { return content_hash(save_config(config)); }

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("manifest: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return content_hash(buf.str());
}

std::string RunManifest::to_json() const {
  json inputs_json = json::array();
  for (const auto& [path, hash] : inputs)
    inputs_json.push_back({{"path", path}, {"hash", hash}});
  json outputs_json = json::array();
  for (const auto& [path, hash] : outputs)
    outputs_json.push_back({{"path", path}, {"hash", hash}});
  json doc = {{"version", "jale-manifest/1"}, {"command", command},
              {"config_hash", config_hash},  {"seed", seed},
              {"inputs", inputs_json},       {"outputs", outputs_json},
              {"warnings", warnings}};
  return doc.dump(2) + "\n";
}

void RunManifest::write(const std::string& output_path) const {
  std::string path = output_path + ".run.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("manifest: cannot write " + path);
  out << to_json();
}

}  // namespace jale
