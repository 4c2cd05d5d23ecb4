#include "jale/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace jale {

using nlohmann::json;

void validate_config(const JaleConfig& config) {
  if (config.ladder.empty()) throw Error("config.ladder: must not be empty");
  double prev_bitrate = 0.0;
  for (size_t i = 0; i < config.ladder.size(); ++i) {
    const Representation& rep = config.ladder[i];
    std::string at = "config.ladder[" + std::to_string(i) + "]";
    if (rep.height <= 0) throw Error(at + ".height: must be positive");
    if (!(rep.bitrate_mbps > 0.0)) throw Error(at + ".bitrate_mbps: must be positive");
    if (rep.index != static_cast<int>(i) + 1)
      throw Error(at + ".index: must equal 1-based ladder position");
    if (!(rep.bitrate_mbps > prev_bitrate))
      throw Error(at + ".bitrate_mbps: bitrates must strictly increase with index");
    prev_bitrate = rep.bitrate_mbps;
  }

  if (config.preset_set.empty()) throw Error("config.preset_set: must not be empty");
  std::set<int> presets(config.preset_set.begin(), config.preset_set.end());
  if (presets.size() != config.preset_set.size())
    throw Error("config.preset_set: duplicate preset identifier");

  if (config.thread_set.empty()) throw Error("config.thread_set: must not be empty");
  int prev_threads = 0;
  for (size_t i = 0; i < config.thread_set.size(); ++i) {
    int n = config.thread_set[i];
    std::string at = "config.thread_set[" + std::to_string(i) + "]";
    if (n <= 0) throw Error(at + ": must be positive");
    if (n <= prev_threads) throw Error(at + ": thread counts must be strictly ascending");
    if (n > config.total_threads)
      throw Error(at + ": thread count " + std::to_string(n) +
                  " exceeds total_threads " + std::to_string(config.total_threads));
    prev_threads = n;
  }

  if (config.total_threads <= 0) throw Error("config.total_threads: must be positive");
  if (!(config.target_speed_fps > 0.0))
    throw Error("config.target_speed_fps: must be positive");
  if (config.jnd_vmaf < 0.0) throw Error("config.jnd_vmaf: must be non-negative");
  if (config.vmaf_cap < 0.0 || config.vmaf_cap > 100.0)
    throw Error("config.vmaf_cap: must lie in [0, 100]");
  if (!config.vmaf_cap_overridden &&
      std::abs(config.vmaf_cap - (100.0 - config.jnd_vmaf)) > 1e-9)
    throw Error("config.vmaf_cap: must equal 100 - jnd_vmaf unless explicitly overridden");
}

static json config_to_json(const JaleConfig& config) {
  json ladder = json::array();
  for (const Representation& rep : config.ladder)
    ladder.push_back({{"height", rep.height}, {"bitrate_mbps", rep.bitrate_mbps}});
  json doc = {
      {"version", kConfigFormatVersion},
      {"ladder", ladder},
      {"preset_set", config.preset_set},
      {"thread_set", config.thread_set},
      {"total_threads", config.total_threads},
      {"target_speed_fps", config.target_speed_fps},
      {"jnd_vmaf", config.jnd_vmaf},
  };
  if (config.vmaf_cap_overridden) doc["vmaf_cap"] = config.vmaf_cap;
  return doc;
}

std::string save_config(const JaleConfig& config) {
  return config_to_json(config).dump(2) + "\n";
}

JaleConfig load_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("config: parse failure: ") + e.what());
  }

  try {
    if (!doc.contains("version"))
      throw Error("config.version: missing");
    if (doc.at("version").get<std::string>() != kConfigFormatVersion)
      throw Error("config.version: expected \"" + std::string(kConfigFormatVersion) +
                  "\", got \"" + doc.at("version").get<std::string>() + "\"");

    JaleConfig config;
    int index = 1;
    for (const json& rung : doc.at("ladder")) {
      Representation rep;
      rep.height = rung.at("height").get<int>();
      rep.bitrate_mbps = rung.at("bitrate_mbps").get<double>();
      rep.index = index++;
      config.ladder.push_back(rep);
    }
    config.preset_set = doc.at("preset_set").get<std::vector<int>>();
    config.thread_set = doc.at("thread_set").get<std::vector<int>>();
    config.total_threads = doc.at("total_threads").get<int>();
    config.target_speed_fps = doc.at("target_speed_fps").get<double>();
    config.jnd_vmaf = doc.at("jnd_vmaf").get<double>();
    if (doc.contains("vmaf_cap")) {
      config.vmaf_cap = doc.at("vmaf_cap").get<double>();
      config.vmaf_cap_overridden =
          std::abs(config.vmaf_cap - (100.0 - config.jnd_vmaf)) > 1e-9;
    } else {
      config.vmaf_cap = 100.0 - config.jnd_vmaf;
    }

    validate_config(config);
    return config;
  } catch (const json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
}

JaleConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

JaleConfig default_hls_ladder() {
  JaleConfig config;
  const int heights[] = {360, 432, 540, 540, 540, 720, 720, 1080, 1080, 1440, 2160, 2160};
  const double bitrates[] = {0.145, 0.300, 0.600, 0.900, 1.600, 2.400,
                             3.400, 4.500, 5.800, 8.100, 11.600, 16.800};
  for (int t = 0; t < 12; ++t)
    config.ladder.push_back({heights[t], bitrates[t], t + 1});
  config.preset_set = {5, 4, 3, 2, 1, 0};  // medium .. ultrafast
  config.thread_set = {4, 8, 12, 16, 20, 24};
  config.total_threads = 96;
  config.target_speed_fps = 30.0;
  config.jnd_vmaf = 6.0;
  config.vmaf_cap = 94.0;
  return config;
}

}  // namespace jale
