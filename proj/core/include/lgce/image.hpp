#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lgce {

/// Single 8-bit sample plane, row-major.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> samples;

  Plane() = default;
  Plane(std::size_t w, std::size_t h, std::uint8_t fill = 0) : width(w), height(h), samples(w * h, fill) {}

  std::uint8_t at(std::size_t x, std::size_t y) const { return samples[y * width + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return samples[y * width + x]; }
  bool operator==(const Plane&) const = default;
};

/// Real-valued plane used before quantisation to bytes.
struct PlaneF {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> samples;

  PlaneF() = default;
  PlaneF(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), samples(w * h, fill) {}

  double at(std::size_t x, std::size_t y) const { return samples[y * width + x]; }
  double& at(std::size_t x, std::size_t y) { return samples[y * width + x]; }
};

/// Planar 8-bit 4:2:0 frame: full-size Y, half-size U and V.
struct YuvImage {
  Plane y;
  Plane u;
  Plane v;

  /// Zero-filled frame. Throws ShapeError unless both dims are even and positive.
  static YuvImage blank(std::size_t width, std::size_t height);

  std::size_t width() const { return y.width; }
  std::size_t height() const { return y.height; }
  bool operator==(const YuvImage&) const = default;
};

/// Interleaved 8-bit RGB.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // R, G, B per pixel

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h * 3, 0) {}
  bool operator==(const RgbImage&) const = default;
};

/// Rounds half-up after clamping to [0, 255].
std::uint8_t quantize_sample(double value);

void require_even_dims(std::size_t width, std::size_t height, const char* what);

}  // namespace lgce
