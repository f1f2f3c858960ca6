#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lgce/image.hpp"

namespace lgce::test {

/// Procedural RGB scene: smooth colour gradients plus a few hard-edged
/// coloured discs and bars, so every plane has structure and edges.
RgbImage make_scene(std::size_t width, std::size_t height, std::uint64_t seed);

/// Scenes converted to 4:2:0.
std::vector<YuvImage> make_yuv_scenes(std::size_t count, std::size_t width, std::size_t height,
                                      std::uint64_t seed);

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

}  // namespace lgce::test
