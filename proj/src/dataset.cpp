#include "jale/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jale/rng.hpp"
#include "jale/selection.hpp"
#include "jale/video_io.hpp"

namespace jale {

void resolve_features(SegmentRef& segment, int block_size) {
  if (segment.features) return;
  if (segment.path.empty())
    throw Error("dataset: segment " + segment.id + " has neither features nor a file");
  VideoInfo info;
  std::vector<LumaPlane> frames = read_y4m(segment.path, &info);
  segment.features = analyze_segment(frames, block_size);
  segment.frame_count = static_cast<int>(frames.size());
  segment.frame_rate = info.frame_rate;
}

DatasetResult generate_dataset(EncoderBackend& backend, std::vector<SegmentRef>& segments,
                               const std::vector<Representation>& ladder,
                               const std::vector<int>& thread_set,
                               const std::vector<int>& preset_set, int block_size) {
  if (ladder.empty() || thread_set.empty() || preset_set.empty())
    throw Error("dataset: ladder, thread set and preset set must be non-empty");

  DatasetResult result;
  for (SegmentRef& segment : segments) {
    resolve_features(segment, block_size);
    const SegmentFeatures& features = *segment.features;
    for (const Representation& rep : ladder) {
      for (int threads : thread_set) {
        for (int preset : preset_set) {
          try {
            EncodeRecord record = backend.encode(segment, rep, {threads, preset});
            DatasetRow row;
            row.e_y = features.texture_energy;
            row.h = features.temporal_gradient;
            row.l_y = features.luminescence;
            row.r = rep.height;
            row.b = rep.bitrate_mbps;
            row.n = threads;
            row.p = preset;
            row.achieved_bitrate = record.achieved_bitrate_mbps;
            row.speed = record.achieved_speed_fps;
            row.psnr = record.psnr_db.value_or(std::nan(""));
            row.vmaf = record.vmaf.value_or(std::nan(""));
            result.rows.push_back(row);
          } catch (const std::exception& ex) {
            result.errors.push_back("segment=" + segment.id + " r=" +
                                    std::to_string(rep.height) + " b=" +
                                    std::to_string(rep.bitrate_mbps) + " n=" +
                                    std::to_string(threads) + " p=" + std::to_string(preset) +
                                    ": " + ex.what());
          }
        }
      }
    }
  }
  return result;
}

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string dataset_to_csv(const DatasetResult& dataset) {
  std::string out = kDatasetCsvHeader;
  out += "\n";
  for (const DatasetRow& row : dataset.rows) {
    out += format_value(row.e_y) + "," + format_value(row.h) + "," + format_value(row.l_y) +
           "," + std::to_string(row.r) + "," + format_value(row.b) + "," +
           std::to_string(row.n) + "," + std::to_string(row.p) + "," +
           format_value(row.achieved_bitrate) + "," + format_value(row.speed) + "," +
           format_value(row.psnr) + "," + format_value(row.vmaf) + "\n";
  }
  return out;
}

std::vector<DatasetRow> dataset_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw Error("dataset: empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetCsvHeader)
    throw Error("dataset: unexpected CSV header \"" + line + "\"");

  std::vector<DatasetRow> rows;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ','))
      try {
        values.push_back(field == "nan" ? std::nan("") : std::stod(field));
      } catch (const std::exception&) {
        throw Error("dataset: line " + std::to_string(line_no) + ": bad value \"" + field + "\"");
      }
    if (values.size() != 11)
      throw Error("dataset: line " + std::to_string(line_no) + ": expected 11 fields, got " +
                  std::to_string(values.size()));
    DatasetRow row;
    row.e_y = values[0];
    row.h = values[1];
    row.l_y = values[2];
    row.r = static_cast<int>(values[3]);
    row.b = values[4];
    row.n = static_cast<int>(values[5]);
    row.p = static_cast<int>(values[6]);
    row.achieved_bitrate = values[7];
    row.speed = values[8];
    row.psnr = values[9];
    row.vmaf = values[10];
    rows.push_back(row);
  }
  return rows;
}

std::vector<DatasetRow> load_dataset_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("dataset: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_csv(buf.str());
}

TrainingSet speed_training_set(const std::vector<DatasetRow>& rows, int threads, int preset) {
  TrainingSet set;
  set.feature_names = kModelFeatureNames;
  set.target_name = "speed";
  for (const DatasetRow& row : rows)
    if (row.n == threads && row.p == preset)
      set.push_row({row.e_y, row.h, row.l_y, static_cast<double>(row.r), row.b}, row.speed);
  return set;
}

TrainingSet quality_training_set(const std::vector<DatasetRow>& rows, int preset) {
  TrainingSet set;
  set.feature_names = kModelFeatureNames;
  set.target_name = "vmaf";
  for (const DatasetRow& row : rows)
    if (row.p == preset && !std::isnan(row.vmaf))
      set.push_row({row.e_y, row.h, row.l_y, static_cast<double>(row.r), row.b}, row.vmaf);
  return set;
}

std::vector<SegmentRef> synthetic_segments(int count, uint64_t seed) {
  std::vector<SegmentRef> segments;
  SplitMix64 rng(mix_u64(seed ^ 0x5eedfeed5eedfeedULL));
  for (int i = 0; i < count; ++i) {
    SegmentRef segment;
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%04d", i);
    segment.id = id;
    SegmentFeatures features;
    features.texture_energy = std::exp(rng.next_range(std::log(2.0), std::log(120.0)));
    features.temporal_gradient = std::exp(rng.next_range(std::log(0.5), std::log(60.0)));
    features.luminescence = rng.next_range(0.8, 2.6);
    features.frame_count = 120;
    features.block_size = 32;
    segment.features = features;
    segments.push_back(std::move(segment));
  }
  return segments;
}

}  // namespace jale
