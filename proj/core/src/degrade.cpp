#include "lgce/degrade.hpp"

#include <cmath>
#include <stdexcept>

#include "lgce/rng.hpp"

namespace lgce {

DegradeParams severity_params(int severity) {
  if (severity < 1 || severity > 4) throw std::invalid_argument("severity must be in 1..4");
  return DegradeParams{0.5 * severity, 2.0};
}

Plane gaussian_blur(const Plane& plane, double sigma) {
  if (sigma <= 0.0) return plane;
  const auto radius = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double norm = 0.0;
  for (long i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    norm += taps[i + radius];
  }
  for (auto& t : taps) t /= norm;

  const auto w = static_cast<long>(plane.width);
  const auto h = static_cast<long>(plane.height);
  auto clamp_index = [](long i, long n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); };
  std::vector<double> horizontal(plane.samples.size());
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long k = -radius; k <= radius; ++k) acc += taps[k + radius] * plane.samples[y * w + clamp_index(x + k, w)];
      horizontal[y * w + x] = acc;
    }
  }
  Plane out(plane.width, plane.height);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      for (long k = -radius; k <= radius; ++k) acc += taps[k + radius] * horizontal[clamp_index(y + k, h) * w + x];
      out.samples[y * w + x] = quantize_sample(acc);
    }
  }
  return out;
}

YuvImage degrade(const YuvImage& image, const DegradeParams& params, std::uint64_t seed) {
  YuvImage out{gaussian_blur(image.y, params.blur_sigma), gaussian_blur(image.u, params.blur_sigma),
               gaussian_blur(image.v, params.blur_sigma)};
  if (params.chroma_noise_sigma > 0.0) {
    Rng rng(seed);
    for (Plane* plane : {&out.u, &out.v}) {
      for (auto& s : plane->samples) s = quantize_sample(s + rng.normal(0.0, params.chroma_noise_sigma));
    }
  }
  return out;
}

YuvImage synth_degrade(const YuvImage& image, int severity, std::uint64_t seed) {
  return degrade(image, severity_params(severity), seed);
}

}  // namespace lgce
