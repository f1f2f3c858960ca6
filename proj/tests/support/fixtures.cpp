#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <unistd.h>

#include "lgce/color.hpp"
#include "lgce/rng.hpp"

namespace lgce::test {

RgbImage make_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
  Rng rng(seed);
  RgbImage img(width, height);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);

  std::array<double, 3> base{}, gx{}, gy{};
  for (int c = 0; c < 3; ++c) {
    base[c] = 60.0 + 120.0 * rng.uniform();
    gx[c] = (rng.uniform() - 0.5) * 120.0;
    gy[c] = (rng.uniform() - 0.5) * 120.0;
  }
  const double freq = 2.0 + 4.0 * rng.uniform();
  const double phase = 6.283185307179586 * rng.uniform();

  struct Disc {
    double cx, cy, r;
    std::array<double, 3> color;
  };
  std::vector<Disc> discs(3 + rng.uniform_index(3));
  for (auto& d : discs) {
    d.cx = rng.uniform() * w;
    d.cy = rng.uniform() * h;
    d.r = (0.08 + 0.2 * rng.uniform()) * std::min(w, h);
    for (auto& c : d.color) c = 255.0 * rng.uniform();
  }
  const double bar_x = rng.uniform() * w;
  const double bar_w = (0.05 + 0.1 * rng.uniform()) * w;
  std::array<double, 3> bar_color{};
  for (auto& c : bar_color) c = 255.0 * rng.uniform();

  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double u = static_cast<double>(x) / w;
      const double v = static_cast<double>(y) / h;
      std::array<double, 3> px{};
      for (int c = 0; c < 3; ++c) {
        px[c] = base[c] + gx[c] * u + gy[c] * v + 20.0 * std::sin(freq * (u + v) * 3.14159 + phase + c);
      }
      const double fx = static_cast<double>(x);
      if (fx >= bar_x && fx < bar_x + bar_w) px = bar_color;
      for (const auto& d : discs) {
        const double dx = fx - d.cx;
        const double dy = static_cast<double>(y) - d.cy;
        if (dx * dx + dy * dy <= d.r * d.r) px = d.color;
      }
      for (int c = 0; c < 3; ++c) img.pixels[(y * width + x) * 3 + c] = quantize_sample(px[c]);
    }
  }
  return img;
}

std::vector<YuvImage> make_yuv_scenes(std::size_t count, std::size_t width, std::size_t height,
                                      std::uint64_t seed) {
  std::vector<YuvImage> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(rgb_to_yuv420(make_scene(width, height, seed + 7919 * i)));
  return out;
}

TempDir::TempDir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto stamp = static_cast<std::uint64_t>(std::hash<std::string>{}(tag)) ^ (++counter * 0x9E3779B97F4A7C15ull);
  path_ = std::filesystem::temp_directory_path() /
          ("lgce_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(stamp % 1000000007ull));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace lgce::test
