#include "lgce/enhance.hpp"

#include <string>

#include "lgce/errors.hpp"

namespace lgce {

namespace {

struct TileOrigin {
  std::size_t x;
  std::size_t y;
};

}  // namespace

PlaneSelection parse_plane_selection(std::string_view text) {
  if (text == "u" || text == "U") return PlaneSelection::U;
  if (text == "v" || text == "V") return PlaneSelection::V;
  if (text == "both") return PlaneSelection::Both;
  throw std::invalid_argument("plane must be u, v or both, got '" + std::string(text) + "'");
}

std::string_view to_string(PlaneSelection selection) {
  switch (selection) {
    case PlaneSelection::U:
      return "u";
    case PlaneSelection::V:
      return "v";
    case PlaneSelection::Both:
      return "both";
  }
  return "?";
}

Plane enhance_plane(const YuvImage& frame, ChromaPlane which, const ModelParams& params,
                    std::size_t tiles_per_batch) {
  const Plane& chroma = chroma_plane(frame, which);
  if (chroma.width * 2 != frame.width() || chroma.height * 2 != frame.height()) {
    throw ShapeError("enhance_plane: chroma plane is not half the luma size");
  }
  if (tiles_per_batch == 0) tiles_per_batch = 1;

  std::vector<TileOrigin> tiles;
  for (std::size_t y = 0; y < chroma.height; y += kChromaPatch) {
    for (std::size_t x = 0; x < chroma.width; x += kChromaPatch) tiles.push_back({x, y});
  }

  NoGradGuard no_grad;
  Plane out = chroma;
  constexpr std::size_t chroma_area = kChromaPatch * kChromaPatch;
  for (std::size_t start = 0; start < tiles.size(); start += tiles_per_batch) {
    const std::size_t n = std::min(tiles_per_batch, tiles.size() - start);
    std::vector<float> chroma_in, luma_in;
    chroma_in.reserve(n * chroma_area);
    luma_in.reserve(n * kLumaPatch * kLumaPatch);
    for (std::size_t t = start; t < start + n; ++t) {
      for (std::uint8_t s : crop_replicate(chroma, tiles[t].x, tiles[t].y, kChromaPatch, kChromaPatch)) {
        chroma_in.push_back(static_cast<float>(s) / 255.0f);
      }
      for (std::uint8_t s : crop_replicate(frame.y, 2 * tiles[t].x, 2 * tiles[t].y, kLumaPatch, kLumaPatch)) {
        luma_in.push_back(static_cast<float>(s) / 255.0f);
      }
    }
    const Tensor result =
        model_forward(Tensor::from_data({n, 1, kChromaPatch, kChromaPatch}, std::move(chroma_in)),
                      Tensor::from_data({n, 1, kLumaPatch, kLumaPatch}, std::move(luma_in)), params);
    const auto values = result.data();
    for (std::size_t i = 0; i < n; ++i) {
      const TileOrigin& tile = tiles[start + i];
      const std::size_t h = std::min(kChromaPatch, chroma.height - tile.y);
      const std::size_t w = std::min(kChromaPatch, chroma.width - tile.x);
      for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          out.at(tile.x + x, tile.y + y) = quantize_sample(255.0 * values[i * chroma_area + y * kChromaPatch + x]);
        }
      }
    }
  }
  return out;
}

YuvImage enhance_frame(const YuvImage& frame, const ModelParams& params, PlaneSelection selection,
                       std::size_t tiles_per_batch) {
  YuvImage out = frame;
  if (selection != PlaneSelection::V) out.u = enhance_plane(frame, ChromaPlane::U, params, tiles_per_batch);
  if (selection != PlaneSelection::U) out.v = enhance_plane(frame, ChromaPlane::V, params, tiles_per_batch);
  return out;
}

}  // namespace lgce
