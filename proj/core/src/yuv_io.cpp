#include "lgce/yuv_io.hpp"

#include <fstream>

#include "lgce/errors.hpp"

namespace lgce {

std::size_t i420_frame_bytes(std::size_t width, std::size_t height) { return width * height * 3 / 2; }

std::size_t count_yuv420_frames(const std::filesystem::path& path, std::size_t width, std::size_t height) {
  require_even_dims(width, height, "count_yuv420_frames");
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw DataError("cannot stat " + path.string() + ": " + ec.message());
  const std::size_t frame = i420_frame_bytes(width, height);
  if (size % frame != 0) {
    throw DataError(path.string() + ": size " + std::to_string(size) + " is not a multiple of the " +
                    std::to_string(width) + "x" + std::to_string(height) + " frame size " + std::to_string(frame));
  }
  return static_cast<std::size_t>(size / frame);
}

YuvImage read_yuv420(const std::filesystem::path& path, std::size_t width, std::size_t height,
                     std::size_t frame_index) {
  YuvImage image = YuvImage::blank(width, height);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const auto offset = static_cast<std::streamoff>(frame_index * i420_frame_bytes(width, height));
  in.seekg(offset);
  for (Plane* plane : {&image.y, &image.u, &image.v}) {
    in.read(reinterpret_cast<char*>(plane->samples.data()), static_cast<std::streamsize>(plane->samples.size()));
    if (!in) {
      throw DataError(path.string() + ": truncated, frame " + std::to_string(frame_index) + " of " +
                      std::to_string(width) + "x" + std::to_string(height) + " needs " +
                      std::to_string((frame_index + 1) * i420_frame_bytes(width, height)) + " bytes");
    }
  }
  return image;
}

void write_yuv420(const YuvImage& image, const std::filesystem::path& path, bool append) {
  require_even_dims(image.width(), image.height(), "write_yuv420");
  if (image.u.width * 2 != image.width() || image.u.height * 2 != image.height() || image.v.width != image.u.width ||
      image.v.height != image.u.height) {
    throw ShapeError("write_yuv420: chroma planes are not half the luma size");
  }
  std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  for (const Plane* plane : {&image.y, &image.u, &image.v}) {
    out.write(reinterpret_cast<const char*>(plane->samples.data()), static_cast<std::streamsize>(plane->samples.size()));
  }
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<YuvImage> read_all_yuv420(const std::filesystem::path& path, std::size_t width, std::size_t height) {
  const std::size_t frames = count_yuv420_frames(path, width, height);
  std::vector<YuvImage> out;
  out.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) out.push_back(read_yuv420(path, width, height, f));
  return out;
}

}  // namespace lgce
