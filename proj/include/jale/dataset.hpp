#ifndef JALE_DATASET_HPP
#define JALE_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jale/forest.hpp"
#include "jale/harness.hpp"
#include "jale/types.hpp"

namespace jale {

// One training record; mirrors the fixed CSV header
// E_Y,h,L_Y,r,b,n,p,achieved_bitrate,speed,psnr,vmaf.
struct DatasetRow {
  double e_y = 0.0;
  double h = 0.0;
  double l_y = 0.0;
  int r = 0;
  double b = 0.0;
  int n = 0;
  int p = 0;
  double achieved_bitrate = 0.0;
  double speed = 0.0;
  double psnr = 0.0;  // NaN when no quality tool ran
  double vmaf = 0.0;
};

struct DatasetResult {
  std::vector<DatasetRow> rows;
  std::vector<std::string> errors;  // markers for rows aborted by backend failures
};

inline constexpr const char* kDatasetCsvHeader =
    "E_Y,h,L_Y,r,b,n,p,achieved_bitrate,speed,psnr,vmaf";

// Per segment: computes the complexity features once, then encodes every
// (ladder pair, thread count, preset) combination and appends one row.
// Ladder (r, b) pairs are iterated jointly, not as a cross product. A
// backend failure aborts the affected row with an error marker, not the run.
DatasetResult generate_dataset(EncoderBackend& backend, std::vector<SegmentRef>& segments,
                               const std::vector<Representation>& ladder,
                               const std::vector<int>& thread_set,
                               const std::vector<int>& preset_set,
                               int block_size = 32);

std::string dataset_to_csv(const DatasetResult& dataset);
std::vector<DatasetRow> dataset_from_csv(const std::string& csv_text);
std::vector<DatasetRow> load_dataset_csv(const std::string& path);

// Rows filtered to one (n, p) cell, features (E_Y, h, L_Y, r, b), target
// encoding speed.
TrainingSet speed_training_set(const std::vector<DatasetRow>& rows, int threads, int preset);
// Rows filtered to one preset (rows without a VMAF measurement are skipped),
// same features, target VMAF.
TrainingSet quality_training_set(const std::vector<DatasetRow>& rows, int preset);

// Fills in segment.features when absent (reads segment.path, .y4m only).
void resolve_features(SegmentRef& segment, int block_size = 32);

// Seeded synthetic segments for simulator runs: complexity features sampled
// log-uniformly over a plausible range.
std::vector<SegmentRef> synthetic_segments(int count, uint64_t seed);

}  // namespace jale

#endif
