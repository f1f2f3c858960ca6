#include "lgce/color.hpp"

#include "lgce/errors.hpp"

namespace lgce {

namespace {

Matrix3 invert(const Matrix3& m) {
  const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
  Matrix3 inv{};
  inv[0][0] = c00 / det;
  inv[1][0] = c01 / det;
  inv[2][0] = c02 / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

std::array<double, 3> apply(const Matrix3& m, double a, double b, double c) {
  return {m[0][0] * a + m[0][1] * b + m[0][2] * c, m[1][0] * a + m[1][1] * b + m[1][2] * c,
          m[2][0] * a + m[2][1] * b + m[2][2] * c};
}

void require_same_dims(const auto& a, const auto& b, const auto& c, const char* what) {
  if (a.width != b.width || a.width != c.width || a.height != b.height || a.height != c.height) {
    throw ShapeError(std::string(what) + ": planes differ in size");
  }
}

}  // namespace

const Matrix3& rgb_to_yuv_matrix() {
  static const Matrix3 m = {{{0.2126, 0.7152, 0.0722}, {-0.1146, -0.3854, 0.5000}, {0.5000, -0.4542, -0.0458}}};
  return m;
}

const Matrix3& yuv_to_rgb_matrix() {
  static const Matrix3 m = invert(rgb_to_yuv_matrix());
  return m;
}

std::array<double, 3> rgb_to_yuv(double r, double g, double b) {
  auto yuv = apply(rgb_to_yuv_matrix(), r, g, b);
  for (int i = 0; i < 3; ++i) yuv[i] += kYuvOffset[i];
  return yuv;
}

std::array<double, 3> yuv_to_rgb(double y, double u, double v) {
  return apply(yuv_to_rgb_matrix(), y - kYuvOffset[0], u - kYuvOffset[1], v - kYuvOffset[2]);
}

Yuv444 rgb_to_yuv444(const RgbImage& rgb) {
  Yuv444 out{PlaneF(rgb.width, rgb.height), PlaneF(rgb.width, rgb.height), PlaneF(rgb.width, rgb.height)};
  for (std::size_t i = 0; i < rgb.width * rgb.height; ++i) {
    const auto yuv = rgb_to_yuv(rgb.pixels[3 * i], rgb.pixels[3 * i + 1], rgb.pixels[3 * i + 2]);
    out.y.samples[i] = yuv[0];
    out.u.samples[i] = yuv[1];
    out.v.samples[i] = yuv[2];
  }
  return out;
}

RgbImage yuv444_to_rgb(const PlaneF& y, const PlaneF& u, const PlaneF& v) {
  require_same_dims(y, u, v, "yuv444_to_rgb");
  RgbImage out(y.width, y.height);
  for (std::size_t i = 0; i < y.width * y.height; ++i) {
    const auto rgb = yuv_to_rgb(y.samples[i], u.samples[i], v.samples[i]);
    for (int c = 0; c < 3; ++c) out.pixels[3 * i + c] = quantize_sample(rgb[c]);
  }
  return out;
}

RgbImage yuv444_to_rgb(const Plane& y, const Plane& u, const Plane& v) {
  require_same_dims(y, u, v, "yuv444_to_rgb");
  auto widen = [](const Plane& p) {
    PlaneF out(p.width, p.height);
    for (std::size_t i = 0; i < p.samples.size(); ++i) out.samples[i] = p.samples[i];
    return out;
  };
  return yuv444_to_rgb(widen(y), widen(u), widen(v));
}

Plane subsample_420(const PlaneF& plane) {
  require_even_dims(plane.width, plane.height, "subsample_420");
  Plane out(plane.width / 2, plane.height / 2);
  for (std::size_t y = 0; y < out.height; ++y) {
    for (std::size_t x = 0; x < out.width; ++x) {
      const double sum = plane.at(2 * x, 2 * y) + plane.at(2 * x + 1, 2 * y) + plane.at(2 * x, 2 * y + 1) +
                         plane.at(2 * x + 1, 2 * y + 1);
      out.at(x, y) = quantize_sample(sum / 4.0);
    }
  }
  return out;
}

Plane subsample_420(const Plane& plane) {
  PlaneF wide(plane.width, plane.height);
  for (std::size_t i = 0; i < plane.samples.size(); ++i) wide.samples[i] = plane.samples[i];
  return subsample_420(wide);
}

Plane upsample_420(const Plane& plane) {
  Plane out(plane.width * 2, plane.height * 2);
  for (std::size_t y = 0; y < out.height; ++y) {
    for (std::size_t x = 0; x < out.width; ++x) out.at(x, y) = plane.at(x / 2, y / 2);
  }
  return out;
}

YuvImage rgb_to_yuv420(const RgbImage& rgb) {
  require_even_dims(rgb.width, rgb.height, "rgb_to_yuv420");
  const Yuv444 full = rgb_to_yuv444(rgb);
  YuvImage out;
  out.y = Plane(rgb.width, rgb.height);
  for (std::size_t i = 0; i < full.y.samples.size(); ++i) out.y.samples[i] = quantize_sample(full.y.samples[i]);
  out.u = subsample_420(full.u);
  out.v = subsample_420(full.v);
  return out;
}

RgbImage yuv420_to_rgb(const YuvImage& yuv) {
  return yuv444_to_rgb(yuv.y, upsample_420(yuv.u), upsample_420(yuv.v));
}

}  // namespace lgce
