#ifndef JALE_HARNESS_HPP
#define JALE_HARNESS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jale/types.hpp"

namespace jale {

// One encodable unit. Synthetic segments carry features only; file-backed
// segments are analyzed on first use.
struct SegmentRef {
  std::string id;
  std::string path;  // empty for synthetic segments
  std::optional<SegmentFeatures> features;
  int frame_count = 120;
  double frame_rate = 30.0;
};

struct BackendCapabilities {
  std::vector<int> presets;
  int min_threads = 1;
  int max_threads = 0;
  std::vector<std::string> rate_control_modes;
};

class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;
  virtual std::string name() const = 0;
  virtual const BackendCapabilities& capabilities() const = 0;
  // Throws Error on process failure, unparseable output or a (threads,
  // preset) pair outside the capability range.
  virtual EncodeRecord encode(const SegmentRef& segment, const Representation& rep,
                              const ThreadPresetPair& pair) = 0;
};

// Closed-form ground truth standing in for hardware measurements.
//
// speed = T(p) * (n/4)^alpha
//         / (pixel_rate * (1 + beta*E') * (1 + gamma*h') * (1 + slowdown*log2(1 + b)))
// vmaf  = 100 / (1 + exp(-k(p) * (ln b - ln b_mid(r, E', p))))
//
// where E' and h' are the features normalized by their reference scales and
// pixel_rate is relative to 1080p. Deterministic measurement noise is keyed
// on (segment, r, b, p, seed) but never on the thread count, so speed stays
// strictly monotone in threads.
struct SimulatorParams {
  double alpha = 0.8;                         // thread-scaling exponent, in (0, 1]
  std::map<int, double> base_throughput_fps;  // T(p): 4 threads, 1080p, zero complexity
  double bitrate_slowdown = 0.05;
  double texture_penalty = 0.6;   // beta
  double motion_penalty = 0.3;    // gamma
  double texture_ref = 40.0;
  double motion_ref = 15.0;

  std::map<int, double> quality_slope;           // k(p)
  std::map<int, double> preset_bitrate_penalty;  // bitrate factor to match slowest preset
  double quality_mid_mbps = 0.18;                // VMAF-50 bitrate at 1080p, zero complexity
  double quality_res_exponent = 0.55;
  double quality_texture_gain = 0.7;

  double speed_noise = 0.03;    // multiplicative, fraction
  double vmaf_noise = 0.3;      // additive, VMAF points
  double psnr_noise = 0.25;     // additive, dB
  double bitrate_noise = 0.01;  // multiplicative, fraction
  double watts_per_thread = 3.5;
  uint64_t seed = 0;

  // Per-preset constants ramped over the set ordered slowest -> fastest.
  static SimulatorParams defaults(const std::vector<int>& preset_set_slowest_first);
};

std::string simulator_params_to_json(const SimulatorParams& params);
SimulatorParams simulator_params_from_json(const std::string& json_text);

class SimulatorBackend : public EncoderBackend {
 public:
  explicit SimulatorBackend(SimulatorParams params, int max_threads = 1024);

  std::string name() const override { return "sim"; }
  const BackendCapabilities& capabilities() const override { return caps_; }
  EncodeRecord encode(const SegmentRef& segment, const Representation& rep,
                      const ThreadPresetPair& pair) override;

  // Noise-free laws, exposed for direct verification.
  double speed_law(const SegmentFeatures& features, const Representation& rep,
                   const ThreadPresetPair& pair) const;
  double quality_law(const SegmentFeatures& features, const Representation& rep,
                     int preset) const;

  const SimulatorParams& params() const { return params_; }

 private:
  SimulatorParams params_;
  BackendCapabilities caps_;
};

// Launches one external encoder process per encode and optionally a quality
// tool; placeholders in the templates: {input} {output} {bitrate_kbps}
// {vbv_maxrate_kbps} {preset} {threads} {fps} and, for the quality tool,
// {reference} {distorted}.
struct ExternalEncoderConfig {
  std::string encoder_binary;  // overridden by $JALE_ENCODER_BIN when set
  std::string args_template =
      "--input {input} --fps {fps} --bitrate {bitrate_kbps} --vbv-maxrate {vbv_maxrate_kbps} "
      "--strict-cbr --preset {preset} --pools {threads} --frame-threads 1 --output {output}";
  std::string quality_binary;  // optional; overridden by $JALE_QUALITY_BIN
  std::string quality_args_template = "{reference} {distorted}";
  std::map<int, std::string> preset_names = {{0, "ultrafast"}, {1, "superfast"},
                                             {2, "veryfast"},  {3, "faster"},
                                             {4, "fast"},      {5, "medium"}};
  int max_threads = 256;
  std::string work_dir = ".";
  double frame_rate = 30.0;
};

class ExternalEncoderBackend : public EncoderBackend {
 public:
  explicit ExternalEncoderBackend(ExternalEncoderConfig config);

  std::string name() const override { return "external"; }
  const BackendCapabilities& capabilities() const override { return caps_; }
  EncodeRecord encode(const SegmentRef& segment, const Representation& rep,
                      const ThreadPresetPair& pair) override;

 private:
  ExternalEncoderConfig config_;
  BackendCapabilities caps_;
};

// In-flight thread-count bookkeeping recorded by run_plan, one event per
// admission and completion.
struct TraceEvent {
  size_t entry_index = 0;
  int delta_threads = 0;
  int in_flight_after = 0;
};

struct BudgetTrace {
  std::vector<TraceEvent> events;
  int max_in_flight = 0;
};

struct RunPlanResult {
  std::vector<EncodeRecord> records;  // successful encodes, in ladder order
  std::vector<std::string> errors;    // one message per failed entry
  BudgetTrace trace;
};

// Executes the retained plan entries concurrently, admitting jobs in ladder
// order while the in-flight thread sum stays within total_threads. An entry
// larger than the whole budget runs alone. Records come back in ladder order
// regardless of completion order; a failed encode is recorded as an error
// and the remaining entries continue.
RunPlanResult run_plan(EncoderBackend& backend, const SegmentRef& segment,
                       const LadderPlan& plan, int total_threads);

}  // namespace jale

#endif
