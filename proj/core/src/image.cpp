#include "lgce/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgce/errors.hpp"

namespace lgce {

std::uint8_t quantize_sample(double value) {
  const double clamped = std::clamp(value, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::floor(clamped + 0.5));
}

void require_even_dims(std::size_t width, std::size_t height, const char* what) {
  if (width == 0 || height == 0 || width % 2 != 0 || height % 2 != 0) {
    throw ShapeError(std::string(what) + ": dimensions must be even and positive, got " + std::to_string(width) +
                     "x" + std::to_string(height));
  }
}

YuvImage YuvImage::blank(std::size_t width, std::size_t height) {
  require_even_dims(width, height, "YuvImage");
  return YuvImage{Plane(width, height), Plane(width / 2, height / 2), Plane(width / 2, height / 2)};
}

}  // namespace lgce
