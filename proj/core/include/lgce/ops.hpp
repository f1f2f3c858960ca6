#pragma once

#include "lgce/tensor.hpp"

namespace lgce {

/// Leaky-ReLU negative slope used throughout the network.
inline constexpr float kDefaultLeakySlope = 0.1f;

/// 2-D convolution over an N x Cin x H x W input with a Cout x Cin x K x K
/// weight and a Cout bias. K must be 1 or 3 and stride 1 or 2; stride 2
/// requires even spatial extents.
/// Output extent per axis: floor((H + 2 * padding - K) / stride) + 1.
Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, int stride,
              int padding);

/// 3x3 average pool, stride 1, zero padding 1, divisor always 9.
Tensor avg_pool3(const Tensor& input);

Tensor leaky_relu(const Tensor& input, float slope = kDefaultLeakySlope);
Tensor relu(const Tensor& input);

Tensor add(const Tensor& a, const Tensor& b);

/// beta * x, where beta is a one-element (usually learnable) tensor.
Tensor scale(const Tensor& x, const Tensor& beta);

/// Mean absolute error as a one-element tensor. No gradient flows to target.
Tensor l1_loss(const Tensor& pred, const Tensor& target);

/// While alive, ops on this thread record no graph. Used for inference.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_mode_enabled();

}  // namespace lgce
