#pragma once

#include <array>

#include "lgce/image.hpp"

namespace lgce {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// RGB -> YUV matrix (BT.709-style weights) applied with offsets 16/128/128.
const Matrix3& rgb_to_yuv_matrix();
/// Exact inverse of rgb_to_yuv_matrix(), computed once by cofactor expansion.
const Matrix3& yuv_to_rgb_matrix();
inline constexpr std::array<double, 3> kYuvOffset = {16.0, 128.0, 128.0};

std::array<double, 3> rgb_to_yuv(double r, double g, double b);
std::array<double, 3> yuv_to_rgb(double y, double u, double v);

struct Yuv444 {
  PlaneF y;
  PlaneF u;
  PlaneF v;
};

/// Real-valued, unclamped full-resolution YUV.
Yuv444 rgb_to_yuv444(const RgbImage& rgb);
/// Inverse conversion with clamp and half-up rounding to bytes.
RgbImage yuv444_to_rgb(const PlaneF& y, const PlaneF& u, const PlaneF& v);
RgbImage yuv444_to_rgb(const Plane& y, const Plane& u, const Plane& v);

/// 2x2 box mean, rounded half-up. Dims must be even.
Plane subsample_420(const PlaneF& plane);
Plane subsample_420(const Plane& plane);
/// Nearest-neighbour 2x replication.
Plane upsample_420(const Plane& plane);

YuvImage rgb_to_yuv420(const RgbImage& rgb);
RgbImage yuv420_to_rgb(const YuvImage& yuv);

}  // namespace lgce
