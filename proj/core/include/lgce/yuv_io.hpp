#pragma once

#include <cstddef>
#include <filesystem>

#include "lgce/image.hpp"

namespace lgce {

/// Bytes per I420 frame: w * h * 3 / 2.
std::size_t i420_frame_bytes(std::size_t width, std::size_t height);

/// Reads frame `frame_index` of a raw planar I420 file (Y, then U, then V,
/// each row-major). Throws DataError if the file is too short.
YuvImage read_yuv420(const std::filesystem::path& path, std::size_t width, std::size_t height,
                     std::size_t frame_index = 0);

void write_yuv420(const YuvImage& image, const std::filesystem::path& path, bool append = false);

/// Number of whole frames in the file; DataError if the size is not a multiple
/// of the frame size.
std::size_t count_yuv420_frames(const std::filesystem::path& path, std::size_t width, std::size_t height);

std::vector<YuvImage> read_all_yuv420(const std::filesystem::path& path, std::size_t width, std::size_t height);

}  // namespace lgce
