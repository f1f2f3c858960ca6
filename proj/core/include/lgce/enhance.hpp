#pragma once

#include <cstddef>
#include <string_view>

#include "lgce/image.hpp"
#include "lgce/network.hpp"
#include "lgce/patches.hpp"

namespace lgce {

enum class PlaneSelection { U, V, Both };

PlaneSelection parse_plane_selection(std::string_view text);
std::string_view to_string(PlaneSelection selection);

/// Runs the model over one chroma plane in 32x32 tiles with co-located
/// 64x64 luma tiles. Edge tiles are replicate-padded and cropped back.
Plane enhance_plane(const YuvImage& frame, ChromaPlane plane, const ModelParams& params,
                    std::size_t tiles_per_batch = 16);

/// Enhances the selected chroma planes; Y and unselected planes are copied.
YuvImage enhance_frame(const YuvImage& frame, const ModelParams& params, PlaneSelection selection,
                       std::size_t tiles_per_batch = 16);

}  // namespace lgce
