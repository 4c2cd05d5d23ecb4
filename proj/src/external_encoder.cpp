#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <regex>

#include "jale/harness.hpp"

namespace jale {

namespace {

struct ProcessResult {
  int exit_code = -1;
  std::string output;
};

ProcessResult run_process(const std::string& command) {
  ProcessResult result;
  std::string wrapped = command + " 2>&1";
  FILE* pipe = popen(wrapped.c_str(), "r");
  if (!pipe) throw Error("external: cannot launch process: " + command);
  std::array<char, 4096> buffer;
  size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = status < 0 ? -1 : WEXITSTATUS(status);
  return result;
}

void substitute(std::string& text, const std::string& key, const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string tail_of(const std::string& text, size_t max_chars = 400) {
  if (text.size() <= max_chars) return text;
  return "..." + text.substr(text.size() - max_chars);
}

}  // namespace

ExternalEncoderBackend::ExternalEncoderBackend(ExternalEncoderConfig config)
    : config_(std::move(config)) {
  if (const char* bin = std::getenv("JALE_ENCODER_BIN")) config_.encoder_binary = bin;
  if (const char* bin = std::getenv("JALE_QUALITY_BIN")) config_.quality_binary = bin;
  if (config_.encoder_binary.empty())
    throw Error("external: no encoder binary configured (set JALE_ENCODER_BIN)");
  for (const auto& [preset, name] : config_.preset_names) caps_.presets.push_back(preset);
  caps_.min_threads = 1;
  caps_.max_threads = config_.max_threads;
  caps_.rate_control_modes = {"cbr"};
}

EncodeRecord ExternalEncoderBackend::encode(const SegmentRef& segment, const Representation& rep,
                                            const ThreadPresetPair& pair) {
  auto preset_name = config_.preset_names.find(pair.preset);
  if (preset_name == config_.preset_names.end())
    throw Error("external: preset " + std::to_string(pair.preset) + " not supported");
  if (pair.threads < caps_.min_threads || pair.threads > caps_.max_threads)
    throw Error("external: thread count " + std::to_string(pair.threads) + " out of range");
  if (segment.path.empty())
    throw Error("external: segment " + segment.id + " has no input file");

  const double kbps = rep.bitrate_mbps * 1000.0;
  std::string output_path = config_.work_dir + "/" + segment.id + "_" +
                            std::to_string(rep.height) + "p_" + format_number(kbps) + "k_n" +
                            std::to_string(pair.threads) + "_p" + std::to_string(pair.preset) +
                            ".bin";

  std::string args = config_.args_template;
  substitute(args, "{input}", segment.path);
  substitute(args, "{output}", output_path);
  substitute(args, "{bitrate_kbps}", format_number(kbps));
  substitute(args, "{vbv_maxrate_kbps}", format_number(kbps));
  substitute(args, "{preset}", preset_name->second);
  substitute(args, "{threads}", std::to_string(pair.threads));
  substitute(args, "{fps}", format_number(config_.frame_rate));

  auto started = std::chrono::steady_clock::now();
  ProcessResult proc = run_process(config_.encoder_binary + " " + args);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (proc.exit_code != 0)
    throw Error("external: encoder exited with status " + std::to_string(proc.exit_code) +
                ": " + tail_of(proc.output));

  // x265-style summary: "encoded 600 frames in 12.34s (48.62 fps), 1602.11 kb/s"
  static const std::regex summary(
      R"(encoded\s+(\d+)\s+frames\s+in\s+([0-9.]+)s\s+\(\s*([0-9.]+)\s*fps\)\s*,\s*([0-9.]+)\s*kb/s)");
  std::smatch m;
  if (!std::regex_search(proc.output, m, summary))
    throw Error("external: unparseable encoder output: " + tail_of(proc.output));

  EncodeRecord record;
  record.segment_id = segment.id;
  record.rep = rep;
  record.pair = pair;
  record.achieved_speed_fps = std::stod(m[3]);
  record.achieved_bitrate_mbps = std::stod(m[4]) / 1000.0;
  record.wall_time_s = elapsed;
  if (record.achieved_speed_fps <= 0.0)
    throw Error("external: encoder reported non-positive speed");

  if (!config_.quality_binary.empty()) {
    std::string qargs = config_.quality_args_template;
    substitute(qargs, "{reference}", segment.path);
    substitute(qargs, "{distorted}", output_path);
    ProcessResult quality = run_process(config_.quality_binary + " " + qargs);
    if (quality.exit_code != 0)
      throw Error("external: quality tool exited with status " +
                  std::to_string(quality.exit_code) + ": " + tail_of(quality.output));
    static const std::regex vmaf_re(R"(VMAF(?:\s+score)?\s*[:=]\s*([0-9.]+))",
                                    std::regex::icase);
    static const std::regex psnr_re(R"(PSNR(?:\s*\([YyAa][^)]*\))?\s*[:=]\s*([0-9.]+))",
                                    std::regex::icase);
    if (std::regex_search(quality.output, m, vmaf_re)) record.vmaf = std::stod(m[1]);
    if (std::regex_search(quality.output, m, psnr_re)) record.psnr_db = std::stod(m[1]);
    if (!record.vmaf && !record.psnr_db)
      throw Error("external: unparseable quality output: " + tail_of(quality.output));
  }
  // no quality binary: speed-only record
  return record;
}

}  // namespace jale
