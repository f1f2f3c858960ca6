#pragma once

#include <cstdint>

#include "lgce/image.hpp"

namespace lgce {

struct DegradeParams {
  double blur_sigma = 0.0;        // Gaussian blur on all planes; 0 disables
  double chroma_noise_sigma = 0.0;  // additive Gaussian noise on U and V; 0 disables
};

/// Blur sigma 0.5 * severity and chroma noise sigma 2 for severity 1..4.
DegradeParams severity_params(int severity);

/// Deterministic stand-in for codec distortion: separable Gaussian blur
/// (radius ceil(3 sigma), edge replication) on every plane, then seeded
/// Gaussian noise on the chroma planes, clamped and rounded to bytes.
YuvImage degrade(const YuvImage& image, const DegradeParams& params, std::uint64_t seed);
YuvImage synth_degrade(const YuvImage& image, int severity, std::uint64_t seed);

Plane gaussian_blur(const Plane& plane, double sigma);

}  // namespace lgce
