#ifndef JALE_SERDE_HPP
#define JALE_SERDE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jale/metrics.hpp"
#include "jale/types.hpp"

namespace jale {

// Versioned JSON documents exchanged between the CLI stages.

std::string features_to_json(const SegmentFeatures& features);
SegmentFeatures features_from_json(const std::string& json_text);

struct PlanDocument {
  LadderPlan plan;
  double jnd_vmaf = 0.0;
  double vmaf_cap = 0.0;
  std::string config_hash;
  uint64_t seed = 0;
};

std::string plan_to_json(const PlanDocument& doc);
PlanDocument plan_from_json(const std::string& json_text);

struct RecordsDocument {
  std::vector<EncodeRecord> records;
  std::vector<std::string> errors;
  std::string config_hash;
  uint64_t seed = 0;
};

std::string records_to_json(const RecordsDocument& doc);
RecordsDocument records_from_json(const std::string& json_text);

struct EvaluationReport {
  BdReport bd;
  double delta_storage = 0.0;
  double delta_threads = 0.0;
  double delta_wall_time = 0.0;
  std::optional<double> delta_energy;  // absent without energy telemetry
};

std::string report_to_json(const EvaluationReport& report);
// Fixed-width table with the BDR_P / BDR_V / BD-PSNR / BD-VMAF / dS / dN / dE columns.
std::string report_to_table(const EvaluationReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace jale

#endif
