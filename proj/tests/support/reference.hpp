#pragma once

// Straightforward float64 nested-loop implementations used as test oracles.
// Nothing here shares code with the library.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lgce::ref {

struct Array {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  std::size_t numel() const { return data.size(); }
};

Array make(std::vector<std::size_t> shape, std::vector<double> data);

/// NCHW input, Cout x Cin x K x K weight.
Array conv2d(const Array& x, const Array& w, const Array& b, int stride, int padding);
Array avg_pool3(const Array& x);
Array leaky_relu(const Array& x, double slope);
Array relu(const Array& x);
Array add(const Array& a, const Array& b);
Array scale(const Array& x, double beta);
double l1(const Array& pred, const Array& target);

struct Conv {
  Array w;
  Array b;
  int stride = 1;
};
Array apply(const Conv& c, const Array& x);

struct Au {
  Conv c1_direct, c1_to_c3, c1_to_pool, c3_after_c1, c3_direct;
};
Array au(const Array& x, const Au& p, double slope);

/// BT.709-style matrix and 16/128/128 offsets, evaluated by hand.
void rgb_to_yuv(double r, double g, double b, double out[3]);

double psnr(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

/// Lagrange interpolant through the given points evaluated at t.
double lagrange(const std::vector<double>& xs, const std::vector<double>& ys, double t);
/// Trapezoid rule with `samples` intervals.
template <typename F>
double trapezoid(F f, double lo, double hi, std::size_t samples) {
  const double step = (hi - lo) / static_cast<double>(samples);
  double sum = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < samples; ++i) sum += f(lo + step * static_cast<double>(i));
  return sum * step;
}

}  // namespace lgce::ref
