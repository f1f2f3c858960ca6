#include "lgce/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "lgce/errors.hpp"

namespace lgce {

double psnr(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, double peak) {
  if (a.size() != b.size()) throw ShapeError("psnr: sample counts differ");
  if (a.empty()) throw ShapeError("psnr: empty planes");
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sse) / static_cast<double>(a.size());
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const Plane& a, const Plane& b, double peak) {
  if (a.width != b.width || a.height != b.height) {
    throw ShapeError("psnr: plane sizes differ (" + std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                     std::to_string(b.width) + "x" + std::to_string(b.height) + ")");
  }
  return psnr(a.samples, b.samples, peak);
}

double delta_psnr(const Plane& enhanced, const Plane& baseline, const Plane& original) {
  return psnr(enhanced, original) - psnr(baseline, original);
}

double CubicFit::operator()(double x) const {
  const double t = (x - center) / scale;
  return coeffs[0] + t * (coeffs[1] + t * (coeffs[2] + t * coeffs[3]));
}

double CubicFit::integral(double lo, double hi) const {
  auto antiderivative = [this](double x) {
    const double t = (x - center) / scale;
    return t * (coeffs[0] + t * (coeffs[1] / 2.0 + t * (coeffs[2] / 3.0 + t * coeffs[3] / 4.0)));
  };
  return scale * (antiderivative(hi) - antiderivative(lo));
}

CubicFit fit_cubic(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("fit_cubic: x and y differ in length");
  if (x.size() < 4) throw DataError("fit_cubic: need at least 4 points, got " + std::to_string(x.size()));
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  CubicFit fit;
  fit.center = 0.5 * (*lo + *hi);
  fit.scale = 0.5 * (*hi - *lo);
  if (!(fit.scale > 0.0)) throw DataError("fit_cubic: degenerate fit, all abscissae equal");

  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd vandermonde(n, 4);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (x[i] - fit.center) / fit.scale;
    vandermonde(i, 0) = 1.0;
    vandermonde(i, 1) = t;
    vandermonde(i, 2) = t * t;
    vandermonde(i, 3) = t * t * t;
    rhs(i) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) throw DataError("fit_cubic: degenerate fit (singular system)");
  const Eigen::Vector4d c = qr.solve(rhs);
  for (int i = 0; i < 4; ++i) fit.coeffs[i] = c(i);
  return fit;
}

namespace {

std::vector<RdPoint> validated(std::span<const RdPoint> curve, const char* which) {
  if (curve.size() < 4) {
    throw DataError(std::string(which) + " curve needs at least 4 points, got " + std::to_string(curve.size()));
  }
  std::vector<RdPoint> sorted(curve.begin(), curve.end());
  std::sort(sorted.begin(), sorted.end(), [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].rate > 0.0) || !std::isfinite(sorted[i].rate) || !std::isfinite(sorted[i].psnr)) {
      throw DataError(std::string(which) + " curve has a non-positive or non-finite point");
    }
    if (i > 0 && sorted[i].rate == sorted[i - 1].rate) {
      throw DataError(std::string(which) + " curve rates must be strictly increasing");
    }
  }
  return sorted;
}

struct Curve {
  std::vector<double> x;
  std::vector<double> y;
};

// Integrates both fitted curves over the common x-range and returns the mean
// vertical gap test - anchor.
double mean_gap(const Curve& anchor, const Curve& test, const char* axis) {
  const double lo = std::max(*std::min_element(anchor.x.begin(), anchor.x.end()),
                             *std::min_element(test.x.begin(), test.x.end()));
  const double hi = std::min(*std::max_element(anchor.x.begin(), anchor.x.end()),
                             *std::max_element(test.x.begin(), test.x.end()));
  if (!(hi > lo)) throw DataError(std::string("curves have no ") + axis + " overlap");
  const double int_anchor = fit_cubic(anchor.x, anchor.y).integral(lo, hi);
  const double int_test = fit_cubic(test.x, test.y).integral(lo, hi);
  return (int_test - int_anchor) / (hi - lo);
}

Curve rate_over_psnr(const std::vector<RdPoint>& points) {
  Curve c;
  for (const auto& p : points) {
    c.x.push_back(p.psnr);
    c.y.push_back(std::log10(p.rate));
  }
  return c;
}

Curve psnr_over_rate(const std::vector<RdPoint>& points) {
  Curve c;
  for (const auto& p : points) {
    c.x.push_back(std::log10(p.rate));
    c.y.push_back(p.psnr);
  }
  return c;
}

}  // namespace

double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  const double gap =
      mean_gap(rate_over_psnr(validated(anchor, "anchor")), rate_over_psnr(validated(test, "test")), "PSNR");
  return (std::pow(10.0, gap) - 1.0) * 100.0;
}

double bd_psnr(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  return mean_gap(psnr_over_rate(validated(anchor, "anchor")), psnr_over_rate(validated(test, "test")), "rate");
}

std::vector<RdPoint> parse_rd_curve(const std::string& text) {
  std::vector<RdPoint> points;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const bool first = !seen_content;
    seen_content = true;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    RdPoint p;
    std::string rest;
    if (!(fields >> p.rate >> p.psnr) || (fields >> rest)) {
      if (first) continue;  // header row
      throw DataError("RD curve line " + std::to_string(line_no) + ": expected 'rate,psnr'");
    }
    points.push_back(p);
  }
  return points;
}

std::vector<RdPoint> read_rd_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_rd_curve(text.str());
}

}  // namespace lgce
