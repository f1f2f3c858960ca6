#pragma once

#include <filesystem>

#include "lgce/image.hpp"

namespace lgce {

/// Binary PPM (P6), maxval 255 only.
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const RgbImage& image, const std::filesystem::path& path);

}  // namespace lgce
