#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "lgce/image.hpp"

namespace lgce {

inline constexpr std::size_t kChromaPatch = 32;
inline constexpr std::size_t kLumaPatch = 2 * kChromaPatch;

enum class ChromaPlane { U, V };

std::string_view plane_name(ChromaPlane plane);
const Plane& chroma_plane(const YuvImage& image, ChromaPlane plane);
Plane& chroma_plane(YuvImage& image, ChromaPlane plane);

/// Co-located training sample. The luma tile origin is twice the chroma
/// tile origin.
struct PatchPair {
  std::vector<std::uint8_t> degraded_chroma;  // kChromaPatch^2
  std::vector<std::uint8_t> original_chroma;  // kChromaPatch^2
  std::vector<std::uint8_t> degraded_luma;    // kLumaPatch^2
  ChromaPlane plane = ChromaPlane::U;
  std::size_t chroma_x = 0;
  std::size_t chroma_y = 0;

  std::size_t luma_x() const { return 2 * chroma_x; }
  std::size_t luma_y() const { return 2 * chroma_y; }
};

/// Non-overlapping chroma tiles in raster order from (0, 0); partial tiles
/// at the right and bottom edges are dropped.
std::vector<PatchPair> extract_patches(const YuvImage& degraded, const YuvImage& original, ChromaPlane plane);

/// Copies a w x h window starting at (x0, y0); samples outside the plane
/// replicate the nearest edge sample.
std::vector<std::uint8_t> crop_replicate(const Plane& plane, std::size_t x0, std::size_t y0, std::size_t w,
                                         std::size_t h);

}  // namespace lgce
