#include "jale/analyzer.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "jale/dct.hpp"

namespace jale {

FrameBlockStats frame_block_stats(const LumaPlane& frame, int block_size) {
  const BlockDct dct(block_size);
  const int w = block_size;
  const int blocks_x = (frame.width + w - 1) / w;
  const int blocks_y = (frame.height + w - 1) / w;

  FrameBlockStats stats;
  stats.texture.reserve(static_cast<size_t>(blocks_x) * blocks_y);

  std::vector<double> block(static_cast<size_t>(w) * w);
  std::vector<double> coeffs(block.size());
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      for (int y = 0; y < w; ++y)
        for (int x = 0; x < w; ++x)
          block[static_cast<size_t>(y) * w + x] = frame.at_clamped(bx * w + x, by * w + y);
      dct.forward(block.data(), coeffs.data());
      stats.texture.push_back(dct.texture_energy(coeffs.data()));
      stats.sqrt_dc_sum += std::sqrt(std::abs(coeffs[0]));
    }
  }
  return stats;
}

SegmentFeatures analyze_segment(const std::vector<LumaPlane>& frames, int block_size) {
  if (frames.empty()) throw Error("analyze: empty segment");
  if (!BlockDct::supported(block_size))
    throw Error("analyze: unsupported block size " + std::to_string(block_size));
  const int width = frames[0].width;
  const int height = frames[0].height;
  if (width <= 0 || height <= 0) throw Error("analyze: empty frame");
  for (size_t p = 0; p < frames.size(); ++p) {
    if (frames[p].width != width || frames[p].height != height)
      throw Error("analyze: frame " + std::to_string(p) + " dimensions " +
                  std::to_string(frames[p].width) + "x" + std::to_string(frames[p].height) +
                  " do not match " + std::to_string(width) + "x" + std::to_string(height));
    if (frames[p].samples.size() != static_cast<size_t>(width) * height)
      throw Error("analyze: frame " + std::to_string(p) + " sample count mismatch");
  }

  // Per-frame stats in parallel; each frame writes its own slot, the
  // reductions below run in frame order.
  const size_t frame_count = frames.size();
  std::vector<FrameBlockStats> per_frame(frame_count);
  size_t workers = std::min<size_t>(frame_count, std::thread::hardware_concurrency());
  if (workers <= 1) {
    for (size_t p = 0; p < frame_count; ++p)
      per_frame[p] = frame_block_stats(frames[p], block_size);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (size_t p = next.fetch_add(1); p < frame_count; p = next.fetch_add(1))
          per_frame[p] = frame_block_stats(frames[p], block_size);
      });
    for (std::thread& t : pool) t.join();
  }

  const double w = static_cast<double>(block_size);
  const size_t blocks = per_frame[0].texture.size();

  double texture_sum = 0.0;
  double sqrt_dc_sum = 0.0;
  for (size_t p = 0; p < frame_count; ++p) {
    double frame_sum = 0.0;
    for (double h : per_frame[p].texture) frame_sum += h;
    texture_sum += frame_sum;
    sqrt_dc_sum += per_frame[p].sqrt_dc_sum;
  }

  double gradient_sum = 0.0;
  for (size_t p = 1; p < frame_count; ++p) {
    double frame_sum = 0.0;
    for (size_t k = 0; k < blocks; ++k)
      frame_sum += std::abs(per_frame[p].texture[k] - per_frame[p - 1].texture[k]);
    gradient_sum += frame_sum;
  }

  SegmentFeatures features;
  features.frame_count = static_cast<int>(frame_count);
  features.block_size = block_size;
  features.texture_energy = texture_sum / (static_cast<double>(frame_count) * blocks * w * w);
  features.temporal_gradient =
      frame_count < 2
          ? 0.0
          : gradient_sum / (static_cast<double>(frame_count - 1) * blocks * w * w);
  features.luminescence = sqrt_dc_sum / (static_cast<double>(frame_count) * blocks * w);
  return features;
}

}  // namespace jale
