#include "jale/serde.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace jale {

using nlohmann::json;

namespace {

json parse_versioned(const std::string& text, const std::string& kind,
                     const std::string& version) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(kind + ": parse failure: " + e.what());
  }
  if (!doc.contains("version") || doc.at("version") != version)
    throw Error(kind + ": expected version \"" + version + "\"");
  return doc;
}

}  // namespace

std::string features_to_json(const SegmentFeatures& features) {
  json doc = {{"version", "jale-features/1"},
              {"E_Y", features.texture_energy},
              {"h", features.temporal_gradient},
              {"L_Y", features.luminescence},
              {"frame_count", features.frame_count},
              {"block_size", features.block_size}};
  return doc.dump(2) + "\n";
}

SegmentFeatures features_from_json(const std::string& json_text) {
  json doc = parse_versioned(json_text, "features", "jale-features/1");
  try {
    SegmentFeatures features;
    features.texture_energy = doc.at("E_Y").get<double>();
    features.temporal_gradient = doc.at("h").get<double>();
    features.luminescence = doc.at("L_Y").get<double>();
    features.frame_count = doc.at("frame_count").get<int>();
    features.block_size = doc.at("block_size").get<int>();
    return features;
  } catch (const json::exception& e) {
    throw Error(std::string("features: ") + e.what());
  }
}

std::string plan_to_json(const PlanDocument& doc) {
  json entries = json::array();
  for (const PlanEntry& e : doc.plan.entries)
    entries.push_back({{"index", e.rep.index},
                       {"height", e.rep.height},
                       {"bitrate_mbps", e.rep.bitrate_mbps},
                       {"threads", e.pair.threads},
                       {"preset", e.pair.preset},
                       {"predicted_speed", e.predicted_speed},
                       {"predicted_vmaf", e.predicted_vmaf},
                       {"feasible", e.feasible},
                       {"retained", e.retained}});
  bool any_infeasible = false;
  for (const PlanEntry& e : doc.plan.entries) any_infeasible |= !e.feasible;
  json out = {{"version", "jale-plan/1"},
              {"config_hash", doc.config_hash},
              {"seed", doc.seed},
              {"jnd_vmaf", doc.jnd_vmaf},
              {"vmaf_cap", doc.vmaf_cap},
              {"entries", entries},
              {"total_threads_used", doc.plan.total_threads_used},
              {"budget_exceeded", doc.plan.budget_exceeded},
              {"any_infeasible", any_infeasible}};
  return out.dump(2) + "\n";
}

PlanDocument plan_from_json(const std::string& json_text) {
  json doc = parse_versioned(json_text, "plan", "jale-plan/1");
  try {
    PlanDocument out;
    out.config_hash = doc.at("config_hash").get<std::string>();
    out.seed = doc.at("seed").get<uint64_t>();
    out.jnd_vmaf = doc.at("jnd_vmaf").get<double>();
    out.vmaf_cap = doc.at("vmaf_cap").get<double>();
    for (const json& e : doc.at("entries")) {
      PlanEntry entry;
      entry.rep.index = e.at("index").get<int>();
      entry.rep.height = e.at("height").get<int>();
      entry.rep.bitrate_mbps = e.at("bitrate_mbps").get<double>();
      entry.pair.threads = e.at("threads").get<int>();
      entry.pair.preset = e.at("preset").get<int>();
      entry.predicted_speed = e.at("predicted_speed").get<double>();
      entry.predicted_vmaf = e.at("predicted_vmaf").get<double>();
      entry.feasible = e.at("feasible").get<bool>();
      entry.retained = e.at("retained").get<bool>();
      out.plan.entries.push_back(entry);
    }
    out.plan.budget_exceeded = doc.at("budget_exceeded").get<bool>();
    out.plan.total_threads_used = doc.at("total_threads_used").get<int>();
    return out;
  } catch (const json::exception& e) {
    throw Error(std::string("plan: ") + e.what());
  }
}

std::string records_to_json(const RecordsDocument& doc) {
  json records = json::array();
  for (const EncodeRecord& r : doc.records) {
    json item = {{"segment_id", r.segment_id},
                 {"index", r.rep.index},
                 {"height", r.rep.height},
                 {"bitrate_mbps", r.rep.bitrate_mbps},
                 {"threads", r.pair.threads},
                 {"preset", r.pair.preset},
                 {"achieved_bitrate_mbps", r.achieved_bitrate_mbps},
                 {"achieved_speed_fps", r.achieved_speed_fps},
                 {"wall_time_s", r.wall_time_s}};
    if (r.psnr_db) item["psnr_db"] = *r.psnr_db;
    if (r.vmaf) item["vmaf"] = *r.vmaf;
    if (r.energy_joules) item["energy_joules"] = *r.energy_joules;
    records.push_back(item);
  }
  json out = {{"version", "jale-records/1"},
              {"config_hash", doc.config_hash},
              {"seed", doc.seed},
              {"records", records},
              {"errors", doc.errors}};
  return out.dump(2) + "\n";
}

RecordsDocument records_from_json(const std::string& json_text) {
  json doc = parse_versioned(json_text, "records", "jale-records/1");
  try {
    RecordsDocument out;
    out.config_hash = doc.at("config_hash").get<std::string>();
    out.seed = doc.at("seed").get<uint64_t>();
    for (const json& r : doc.at("records")) {
      EncodeRecord record;
      record.segment_id = r.at("segment_id").get<std::string>();
      record.rep.index = r.at("index").get<int>();
      record.rep.height = r.at("height").get<int>();
      record.rep.bitrate_mbps = r.at("bitrate_mbps").get<double>();
      record.pair.threads = r.at("threads").get<int>();
      record.pair.preset = r.at("preset").get<int>();
      record.achieved_bitrate_mbps = r.at("achieved_bitrate_mbps").get<double>();
      record.achieved_speed_fps = r.at("achieved_speed_fps").get<double>();
      record.wall_time_s = r.at("wall_time_s").get<double>();
      if (r.contains("psnr_db")) record.psnr_db = r.at("psnr_db").get<double>();
      if (r.contains("vmaf")) record.vmaf = r.at("vmaf").get<double>();
      if (r.contains("energy_joules")) record.energy_joules = r.at("energy_joules").get<double>();
      out.records.push_back(std::move(record));
    }
    out.errors = doc.at("errors").get<std::vector<std::string>>();
    return out;
  } catch (const json::exception& e) {
    throw Error(std::string("records: ") + e.what());
  }
}

std::string report_to_json(const EvaluationReport& report) {
  json doc = {{"version", "jale-report/1"},
              {"bdr_psnr_percent", report.bd.bdr_psnr_percent},
              {"bdr_vmaf_percent", report.bd.bdr_vmaf_percent},
              {"bd_psnr_db", report.bd.bd_psnr_db},
              {"bd_vmaf", report.bd.bd_vmaf},
              {"delta_storage", report.delta_storage},
              {"delta_threads", report.delta_threads},
              {"delta_wall_time", report.delta_wall_time}};
  if (report.delta_energy) doc["delta_energy"] = *report.delta_energy;
  return doc.dump(2) + "\n";
}

std::string report_to_table(const EvaluationReport& report) {
  char line[256];
  std::string out;
  out += "  BDR_P [%]  BDR_V [%]  BD-PSNR [dB]  BD-VMAF  dS [%]   dN [%]   dT [%]   dE [%]\n";
  std::string energy = "     -";
  if (report.delta_energy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%8.2f", *report.delta_energy * 100.0);
    energy = buf;
  }
  std::snprintf(line, sizeof(line), "  %9.2f  %9.2f  %12.2f  %7.2f  %7.2f  %7.2f  %7.2f  %s\n",
                report.bd.bdr_psnr_percent, report.bd.bdr_vmaf_percent, report.bd.bd_psnr_db,
                report.bd.bd_vmaf, report.delta_storage * 100.0, report.delta_threads * 100.0,
                report.delta_wall_time * 100.0, energy.c_str());
  out += line;
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io: cannot write " + path);
  out << text;
}

}  // namespace jale
