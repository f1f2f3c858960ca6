#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lgce/image.hpp"

namespace lgce {

/// 10 log10(peak^2 / MSE); +infinity when the planes are identical.
double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, double peak = 255.0);
double psnr(const Plane& a, const Plane& b, double peak = 255.0);

/// psnr(enhanced, original) - psnr(baseline, original).
double delta_psnr(const Plane& enhanced, const Plane& baseline, const Plane& original);

struct RdPoint {
  double rate = 0.0;  // bits or kbit/s, consistent within a curve
  double psnr = 0.0;  // dB
};

/// Least-squares cubic in the normalised variable t = (x - center) / scale.
struct CubicFit {
  std::array<double, 4> coeffs{};  // c0 + c1 t + c2 t^2 + c3 t^3
  double center = 0.0;
  double scale = 1.0;

  double operator()(double x) const;
  /// Exact integral over [lo, hi] in x.
  double integral(double lo, double hi) const;
};

/// Throws DataError for fewer than four points or a rank-deficient system.
CubicFit fit_cubic(std::span<const double> x, std::span<const double> y);

/// Bjontegaard delta rate in percent (negative = bitrate savings of `test`
/// over `anchor`). Classic method: cubic fit of log10(rate) over PSNR for
/// each curve, integrated over the overlapping PSNR interval.
double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

/// Bjontegaard delta PSNR in dB: cubic fit of PSNR over log10(rate),
/// integrated over the overlapping log-rate interval.
double bd_psnr(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

inline constexpr const char* kBdVariant = "classic-cubic";

/// `rate,psnr` per line; blank lines, '#' comments and a non-numeric header
/// row are skipped.
std::vector<RdPoint> read_rd_curve(const std::filesystem::path& path);
std::vector<RdPoint> parse_rd_curve(const std::string& text);

}  // namespace lgce
