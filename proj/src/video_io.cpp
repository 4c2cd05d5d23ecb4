#include "jale/video_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "jale/types.hpp"

namespace jale {

namespace {

// Bytes of one chroma pair relative to a luma plane of `luma` samples.
size_t chroma_samples(const std::string& chroma, size_t luma) {
  if (chroma == "400" || chroma == "mono") return 0;
  if (chroma == "420") return luma / 2;
  if (chroma == "422") return luma;
  if (chroma == "444") return luma * 2;
  throw Error("video: unsupported chroma format " + chroma);
}

LumaPlane read_luma(std::istream& in, int width, int height, int bit_depth) {
  LumaPlane plane;
  plane.width = width;
  plane.height = height;
  const size_t n = static_cast<size_t>(width) * height;
  plane.samples.resize(n);
  if (bit_depth == 8) {
    std::vector<uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in.gcount()) != n) throw Error("video: truncated frame");
    for (size_t i = 0; i < n; ++i) plane.samples[i] = static_cast<float>(raw[i]);
  } else if (bit_depth == 10) {
    std::vector<uint8_t> raw(n * 2);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 2));
    if (static_cast<size_t>(in.gcount()) != n * 2) throw Error("video: truncated frame");
    for (size_t i = 0; i < n; ++i) {
      uint16_t v = static_cast<uint16_t>(raw[2 * i] | (raw[2 * i + 1] << 8));
      plane.samples[i] = static_cast<float>(v) * 0.25f;  // back to 8-bit range
    }
  } else {
    throw Error("video: unsupported bit depth " + std::to_string(bit_depth));
  }
  return plane;
}

void skip_bytes(std::istream& in, size_t count) {
  in.seekg(static_cast<std::streamoff>(count), std::ios::cur);
  if (!in) throw Error("video: truncated frame");
}

}  // namespace

std::vector<LumaPlane> read_y4m(const std::string& path, VideoInfo* info, int max_frames) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("video: cannot open " + path);

  std::string header;
  if (!std::getline(in, header) || header.rfind("YUV4MPEG2", 0) != 0)
    throw Error("video: " + path + " is not a YUV4MPEG2 stream");

  VideoInfo vi;
  std::istringstream fields(header.substr(9));
  std::string field;
  while (fields >> field) {
    switch (field[0]) {
      case 'W': vi.width = std::stoi(field.substr(1)); break;
      case 'H': vi.height = std::stoi(field.substr(1)); break;
      case 'F': {
        size_t colon = field.find(':');
        if (colon != std::string::npos) {
          double num = std::stod(field.substr(1, colon - 1));
          double den = std::stod(field.substr(colon + 1));
          if (den > 0) vi.frame_rate = num / den;
        }
        break;
      }
      case 'C': {
        std::string c = field.substr(1);
        size_t p = c.find("p10");
        if (p != std::string::npos) {
          vi.bit_depth = 10;
          c = c.substr(0, p);
        }
        if (c.rfind("420", 0) == 0) vi.chroma = "420";
        else if (c.rfind("422", 0) == 0) vi.chroma = "422";
        else if (c.rfind("444", 0) == 0) vi.chroma = "444";
        else if (c.rfind("mono", 0) == 0) vi.chroma = "400";
        else throw Error("video: unsupported y4m colourspace C" + field.substr(1));
        break;
      }
      default: break;  // interlacing / aspect tags are irrelevant to luma analysis
    }
  }
  if (vi.width <= 0 || vi.height <= 0) throw Error("video: y4m header missing W/H");

  const size_t luma = static_cast<size_t>(vi.width) * vi.height;
  const size_t bytes_per_sample = vi.bit_depth == 8 ? 1 : 2;
  const size_t chroma_bytes = chroma_samples(vi.chroma, luma) * bytes_per_sample;

  std::vector<LumaPlane> frames;
  std::string marker;
  while (std::getline(in, marker)) {
    if (marker.rfind("FRAME", 0) != 0)
      throw Error("video: malformed y4m frame marker in " + path);
    frames.push_back(read_luma(in, vi.width, vi.height, vi.bit_depth));
    skip_bytes(in, chroma_bytes);
    if (max_frames > 0 && static_cast<int>(frames.size()) >= max_frames) break;
    in.peek();  // trigger eof before the next getline
    if (in.eof()) break;
  }
  if (frames.empty()) throw Error("video: " + path + " contains no frames");
  if (info) *info = vi;
  return frames;
}

std::vector<LumaPlane> read_raw_yuv(const std::string& path, int width, int height,
                                    int bit_depth, const std::string& chroma,
                                    int max_frames) {
  if (width <= 0 || height <= 0) throw Error("video: raw yuv requires positive width/height");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("video: cannot open " + path);

  const size_t luma = static_cast<size_t>(width) * height;
  const size_t bytes_per_sample = bit_depth == 8 ? 1 : 2;
  const size_t chroma_bytes = chroma_samples(chroma, luma) * bytes_per_sample;

  std::vector<LumaPlane> frames;
  while (true) {
    if (in.peek() == std::char_traits<char>::eof()) break;
    frames.push_back(read_luma(in, width, height, bit_depth));
    in.seekg(static_cast<std::streamoff>(chroma_bytes), std::ios::cur);
    if (max_frames > 0 && static_cast<int>(frames.size()) >= max_frames) break;
    if (!in) break;
  }
  if (frames.empty()) throw Error("video: " + path + " contains no frames");
  return frames;
}

std::vector<LumaPlane> read_video(const std::string& path, const VideoInfo& raw_geometry,
                                  VideoInfo* info, int max_frames) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".y4m")
    return read_y4m(path, info, max_frames);
  if (info) *info = raw_geometry;
  return read_raw_yuv(path, raw_geometry.width, raw_geometry.height, raw_geometry.bit_depth,
                      raw_geometry.chroma, max_frames);
}

}  // namespace jale
