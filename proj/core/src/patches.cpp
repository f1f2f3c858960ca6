#include "lgce/patches.hpp"

#include <algorithm>

#include "lgce/errors.hpp"

namespace lgce {

std::string_view plane_name(ChromaPlane plane) { return plane == ChromaPlane::U ? "U" : "V"; }

const Plane& chroma_plane(const YuvImage& image, ChromaPlane plane) {
  return plane == ChromaPlane::U ? image.u : image.v;
}

Plane& chroma_plane(YuvImage& image, ChromaPlane plane) { return plane == ChromaPlane::U ? image.u : image.v; }

std::vector<std::uint8_t> crop_replicate(const Plane& plane, std::size_t x0, std::size_t y0, std::size_t w,
                                         std::size_t h) {
  std::vector<std::uint8_t> out(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t sy = std::min(y0 + y, plane.height - 1);
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t sx = std::min(x0 + x, plane.width - 1);
      out[y * w + x] = plane.at(sx, sy);
    }
  }
  return out;
}

std::vector<PatchPair> extract_patches(const YuvImage& degraded, const YuvImage& original, ChromaPlane plane) {
  if (degraded.width() != original.width() || degraded.height() != original.height()) {
    throw ShapeError("extract_patches: degraded and original frames differ in size");
  }
  const Plane& degraded_chroma = chroma_plane(degraded, plane);
  const Plane& original_chroma = chroma_plane(original, plane);
  std::vector<PatchPair> pairs;
  for (std::size_t ty = 0; ty + kChromaPatch <= degraded_chroma.height; ty += kChromaPatch) {
    for (std::size_t tx = 0; tx + kChromaPatch <= degraded_chroma.width; tx += kChromaPatch) {
      PatchPair pair;
      pair.plane = plane;
      pair.chroma_x = tx;
      pair.chroma_y = ty;
      pair.degraded_chroma = crop_replicate(degraded_chroma, tx, ty, kChromaPatch, kChromaPatch);
      pair.original_chroma = crop_replicate(original_chroma, tx, ty, kChromaPatch, kChromaPatch);
      pair.degraded_luma = crop_replicate(degraded.y, pair.luma_x(), pair.luma_y(), kLumaPatch, kLumaPatch);
      pairs.push_back(std::move(pair));
    }
  }
  return pairs;
}

}  // namespace lgce
