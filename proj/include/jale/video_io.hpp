#ifndef JALE_VIDEO_IO_HPP
#define JALE_VIDEO_IO_HPP

#include <string>
#include <vector>

#include "jale/analyzer.hpp"

namespace jale {

struct VideoInfo {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  double frame_rate = 30.0;
  std::string chroma = "420";  // "400", "420", "422", "444"
};

// Reads the luma plane of every frame of a YUV4MPEG2 file. Chroma planes
// are skipped. 10-bit samples are scaled to the 8-bit range.
std::vector<LumaPlane> read_y4m(const std::string& path, VideoInfo* info = nullptr,
                                int max_frames = -1);

// Raw planar YUV with caller-supplied geometry.
std::vector<LumaPlane> read_raw_yuv(const std::string& path, int width, int height,
                                    int bit_depth = 8, const std::string& chroma = "420",
                                    int max_frames = -1);

// Dispatches on the .y4m extension; raw input requires width/height.
std::vector<LumaPlane> read_video(const std::string& path, const VideoInfo& raw_geometry,
                                  VideoInfo* info = nullptr, int max_frames = -1);

}  // namespace jale

#endif
