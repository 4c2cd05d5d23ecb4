#include <algorithm>
#include <cmath>
#include <cstring>

#include "jale/harness.hpp"
#include "jale/rng.hpp"
#include "json.hpp"

namespace jale {

using nlohmann::json;

namespace {

uint64_t double_bits(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return bits;
}

// Deterministic noise in [-1, 1); independent of the thread count.
double noise_unit(const SimulatorParams& params, const SegmentRef& segment,
                  const Representation& rep, int preset, const char* tag) {
  uint64_t h = mix_u64(params.seed);
  h = hash_combine(h, fnv1a64(segment.id));
  h = hash_combine(h, static_cast<uint64_t>(rep.height));
  h = hash_combine(h, double_bits(rep.bitrate_mbps));
  h = hash_combine(h, static_cast<uint64_t>(preset));
  h = hash_combine(h, fnv1a64(tag));
  return SplitMix64(h).next_unit() * 2.0 - 1.0;
}

double ramp(double slow_value, double fast_value, size_t rank, size_t count) {
  if (count <= 1) return fast_value;
  double t = static_cast<double>(rank) / static_cast<double>(count - 1);
  return slow_value * std::pow(fast_value / slow_value, t);
}

}  // namespace

SimulatorParams SimulatorParams::defaults(const std::vector<int>& preset_set_slowest_first) {
  SimulatorParams params;
  const size_t count = preset_set_slowest_first.size();
  for (size_t rank = 0; rank < count; ++rank) {
    int preset = preset_set_slowest_first[rank];
    params.base_throughput_fps[preset] = ramp(110.0, 480.0, rank, count);
    params.quality_slope[preset] = ramp(1.40, 1.15, rank, count);
    params.preset_bitrate_penalty[preset] = ramp(1.0, 1.35, rank, count);
  }
  return params;
}

SimulatorBackend::SimulatorBackend(SimulatorParams params, int max_threads)
    : params_(std::move(params)) {
  for (const auto& [preset, fps] : params_.base_throughput_fps) caps_.presets.push_back(preset);
  caps_.min_threads = 1;
  caps_.max_threads = max_threads;
  caps_.rate_control_modes = {"cbr"};
}

static double pixel_rate_factor(int height) {
  double width = static_cast<double>(height) * 16.0 / 9.0;
  return width * height / (1920.0 * 1080.0);
}

double SimulatorBackend::speed_law(const SegmentFeatures& features, const Representation& rep,
                                   const ThreadPresetPair& pair) const {
  auto it = params_.base_throughput_fps.find(pair.preset);
  if (it == params_.base_throughput_fps.end())
    throw Error("sim: unsupported preset " + std::to_string(pair.preset));
  double texture = features.texture_energy / params_.texture_ref;
  double motion = features.temporal_gradient / params_.motion_ref;
  double load = pixel_rate_factor(rep.height) * (1.0 + params_.texture_penalty * texture) *
                (1.0 + params_.motion_penalty * motion) *
                (1.0 + params_.bitrate_slowdown * std::log2(1.0 + rep.bitrate_mbps));
  return it->second * std::pow(pair.threads / 4.0, params_.alpha) / load;
}

double SimulatorBackend::quality_law(const SegmentFeatures& features, const Representation& rep,
                                     int preset) const {
  auto slope = params_.quality_slope.find(preset);
  auto penalty = params_.preset_bitrate_penalty.find(preset);
  if (slope == params_.quality_slope.end() || penalty == params_.preset_bitrate_penalty.end())
    throw Error("sim: unsupported preset " + std::to_string(preset));
  double texture = features.texture_energy / params_.texture_ref;
  double mid_bitrate = params_.quality_mid_mbps *
                       std::pow(pixel_rate_factor(rep.height), params_.quality_res_exponent) *
                       (1.0 + params_.quality_texture_gain * texture) * penalty->second;
  return 100.0 / (1.0 + std::exp(-slope->second *
                                 (std::log(rep.bitrate_mbps) - std::log(mid_bitrate))));
}

EncodeRecord SimulatorBackend::encode(const SegmentRef& segment, const Representation& rep,
                                      const ThreadPresetPair& pair) {
  if (!segment.features)
    throw Error("sim: segment " + segment.id + " has no complexity features");
  if (pair.threads < caps_.min_threads || pair.threads > caps_.max_threads)
    throw Error("sim: thread count " + std::to_string(pair.threads) + " out of range");
  const SegmentFeatures& features = *segment.features;

  EncodeRecord record;
  record.segment_id = segment.id;
  record.rep = rep;
  record.pair = pair;
  record.achieved_speed_fps =
      speed_law(features, rep, pair) *
      (1.0 + params_.speed_noise * noise_unit(params_, segment, rep, pair.preset, "speed"));
  record.achieved_bitrate_mbps =
      rep.bitrate_mbps *
      (1.0 + params_.bitrate_noise * noise_unit(params_, segment, rep, pair.preset, "bitrate"));
  double vmaf = quality_law(features, rep, pair.preset) +
                params_.vmaf_noise * noise_unit(params_, segment, rep, pair.preset, "vmaf");
  record.vmaf = std::clamp(vmaf, 0.0, 100.0);
  record.psnr_db = 20.0 + 0.25 * *record.vmaf +
                   params_.psnr_noise * noise_unit(params_, segment, rep, pair.preset, "psnr");
  record.wall_time_s = segment.frame_count / record.achieved_speed_fps;
  record.energy_joules = params_.watts_per_thread * pair.threads * record.wall_time_s;
  return record;
}

std::string simulator_params_to_json(const SimulatorParams& params) {
  auto map_to_json = [](const std::map<int, double>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
  };
  json doc = {{"version", "jale-sim/1"},
              {"alpha", params.alpha},
              {"base_throughput_fps", map_to_json(params.base_throughput_fps)},
              {"bitrate_slowdown", params.bitrate_slowdown},
              {"texture_penalty", params.texture_penalty},
              {"motion_penalty", params.motion_penalty},
              {"texture_ref", params.texture_ref},
              {"motion_ref", params.motion_ref},
              {"quality_slope", map_to_json(params.quality_slope)},
              {"preset_bitrate_penalty", map_to_json(params.preset_bitrate_penalty)},
              {"quality_mid_mbps", params.quality_mid_mbps},
              {"quality_res_exponent", params.quality_res_exponent},
              {"quality_texture_gain", params.quality_texture_gain},
              {"speed_noise", params.speed_noise},
              {"vmaf_noise", params.vmaf_noise},
              {"psnr_noise", params.psnr_noise},
              {"bitrate_noise", params.bitrate_noise},
              {"watts_per_thread", params.watts_per_thread},
              {"seed", params.seed}};
  return doc.dump(2) + "\n";
}

SimulatorParams simulator_params_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("sim params: parse failure: ") + e.what());
  }
  try {
    if (doc.at("version").get<std::string>() != "jale-sim/1")
      throw Error("sim params: unsupported version");
    SimulatorParams params;
    auto map_from_json = [](const json& j) {
      std::map<int, double> m;
      for (auto it = j.begin(); it != j.end(); ++it) m[std::stoi(it.key())] = it.value();
      return m;
    };
    params.alpha = doc.at("alpha").get<double>();
    params.base_throughput_fps = map_from_json(doc.at("base_throughput_fps"));
    params.bitrate_slowdown = doc.at("bitrate_slowdown").get<double>();
    params.texture_penalty = doc.at("texture_penalty").get<double>();
    params.motion_penalty = doc.at("motion_penalty").get<double>();
    params.texture_ref = doc.at("texture_ref").get<double>();
    params.motion_ref = doc.at("motion_ref").get<double>();
    params.quality_slope = map_from_json(doc.at("quality_slope"));
    params.preset_bitrate_penalty = map_from_json(doc.at("preset_bitrate_penalty"));
    params.quality_mid_mbps = doc.at("quality_mid_mbps").get<double>();
    params.quality_res_exponent = doc.at("quality_res_exponent").get<double>();
    params.quality_texture_gain = doc.at("quality_texture_gain").get<double>();
    params.speed_noise = doc.at("speed_noise").get<double>();
    params.vmaf_noise = doc.at("vmaf_noise").get<double>();
    params.psnr_noise = doc.at("psnr_noise").get<double>();
    params.bitrate_noise = doc.at("bitrate_noise").get<double>();
    params.watts_per_thread = doc.at("watts_per_thread").get<double>();
    params.seed = doc.at("seed").get<uint64_t>();
    return params;
  } catch (const json::exception& e) {
    throw Error(std::string("sim params: ") + e.what());
  }
}

}  // namespace jale
