#ifndef JALE_ANALYZER_HPP
#define JALE_ANALYZER_HPP

#include <vector>

#include "jale/types.hpp"

namespace jale {

inline constexpr int kDefaultBlockSize = 32;

// One luma plane in the 8-bit sample range [0, 255]. 10-bit sources are
// scaled down before analysis.
struct LumaPlane {
  int width = 0;
  int height = 0;
  std::vector<float> samples;  // row-major, width * height

  float at_clamped(int x, int y) const {
    if (x < 0) x = 0;
    if (y < 0) y = 0;
    if (x >= width) x = width - 1;
    if (y >= height) y = height - 1;
    return samples[static_cast<size_t>(y) * width + x];
  }
};

// Per-frame block statistics; exposed so temporal deltas can be tested
// against independent recomputation.
struct FrameBlockStats {
  std::vector<double> texture;  // per-block H
  double sqrt_dc_sum = 0.0;     // sum over blocks of sqrt(|DC|)
};

FrameBlockStats frame_block_stats(const LumaPlane& frame, int block_size);

// E_Y: mean over frames and blocks of H / w^2.
// h:   mean over frames p >= 2 and co-located blocks of |H_p - H_{p-1}| / w^2.
// L_Y: mean over all blocks of sqrt(|DC|) / w.
// Frames not divisible into blocks are padded by edge replication. Work is
// parallelized per frame; summation order is fixed so results are
// bit-identical to sequential evaluation.
SegmentFeatures analyze_segment(const std::vector<LumaPlane>& frames,
                                int block_size = kDefaultBlockSize);

}  // namespace jale

#endif
