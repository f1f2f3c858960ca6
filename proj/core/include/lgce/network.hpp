#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lgce/ops.hpp"
#include "lgce/rng.hpp"
#include "lgce/tensor.hpp"

namespace lgce {

inline constexpr std::size_t kRecursiveUnits = 6;
inline constexpr std::size_t kFebCount = 4;
inline constexpr std::size_t kFebDepth = 4;
inline constexpr std::size_t kHeadLayers = 6;

struct NetworkConfig {
  std::size_t feature_width = 64;
  float leaky_slope = kDefaultLeakySlope;
  /// Initial value of the six gate scalars. Each recursive unit amplifies its
  /// input by roughly two orders of magnitude under He init, so gates start
  /// small to keep the six-unit stack at O(1) activations.
  float gate_init = 1e-3f;
  /// When false the luminance branch contributes nothing to the fusion
  /// (the chroma-only ablation). Its parameters still exist.
  bool luma_guidance = true;
};

/// Convolution layer: weight Cout x Cin x K x K, bias Cout. Padding is
/// (K - 1) / 2 so stride-1 layers preserve spatial size.
struct ConvParams {
  Tensor weight;
  Tensor bias;
  int stride = 1;

  std::size_t out_channels() const { return weight.dim(0); }
  std::size_t in_channels() const { return weight.dim(1); }
  std::size_t kernel() const { return weight.dim(2); }
};

Tensor apply_conv(const ConvParams& conv, const Tensor& x);

/// Asymmetric unit: four parallel branches over a C-channel input, summed
/// and passed through Leaky-ReLU.
///   z = c1_direct(x) + c3_after_c1(c1_to_c3(x)) + pool(c1_to_pool(x)) + c3_direct(x)
struct AuParams {
  ConvParams c1_direct;
  ConvParams c1_to_c3;
  ConvParams c1_to_pool;
  ConvParams c3_after_c1;
  ConvParams c3_direct;
};

/// Weights shared by all six recursive units.
struct RuSharedParams {
  AuParams shallow;
  AuParams deep;  // reused by all three deep AU applications
  ConvParams conv;
};

struct GrabParams {
  ConvParams conv_in;  // 1 -> C, produces y0
  RuSharedParams ru;
  std::array<Tensor, kRecursiveUnits> gates;  // one-element tensors
};

struct FebParams {
  std::array<ConvParams, kFebDepth> layers;
};

struct ModelParams {
  NetworkConfig config;
  GrabParams grab;
  ConvParams fuse;  // chroma-side 3x3 stride-1 conv before the fusion add
  std::array<FebParams, kFebCount> febs;
  ConvParams luma_down;  // 3x3 stride-2
  std::array<ConvParams, kHeadLayers> head;

  std::size_t feature_width() const { return config.feature_width; }
};

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

/// Every learnable array exactly once, under its canonical name, in a fixed
/// order. Shared recursive-unit weights appear a single time.
std::vector<NamedTensor> named_parameters(const ModelParams& params);
std::vector<NamedTensor> named_parameters(const GrabParams& params, const std::string& prefix = "grab");
std::vector<NamedTensor> named_parameters(const RuSharedParams& params, const std::string& prefix);
std::vector<NamedTensor> named_parameters(const AuParams& params, const std::string& prefix);
std::vector<Tensor> parameter_list(const ModelParams& params);

/// He-normal weights (std = sqrt(2 / fan_in)), zero biases, gates at
/// config.gate_init.
ModelParams init_model(const NetworkConfig& config, Rng& rng);
/// All weights, biases and gates zero.
ModelParams zero_model(const NetworkConfig& config);

Tensor au_forward(const Tensor& x, const AuParams& p, float slope = kDefaultLeakySlope);
Tensor ru_forward(const Tensor& y_prev, const RuSharedParams& p, const Tensor& gate,
                  float slope = kDefaultLeakySlope);
Tensor grab_forward(const Tensor& chroma, const GrabParams& p, float slope = kDefaultLeakySlope);
Tensor feb_forward(const Tensor& gamma0, const FebParams& p);
/// Four chained FEBs then the stride-2 conv: N x 1 x 2h x 2w -> N x C x h x w.
Tensor luma_branch(const Tensor& luma, const ModelParams& p);
/// head(fuse(grab(chroma)) + luma_branch(luma)) + chroma.
Tensor model_forward(const Tensor& chroma, const Tensor& luma, const ModelParams& p);

struct BlockCount {
  std::string block;
  std::size_t count = 0;
};

struct ParamTable {
  std::vector<BlockCount> blocks;
  std::size_t total() const;
};

/// Scalar parameter counts per block: grab, fuse, feb.0..feb.3, luma_down, head.
ParamTable param_count(const ModelParams& params);
std::size_t count_scalars(const std::vector<NamedTensor>& tensors);

}  // namespace lgce

namespace lgce {

/// Independent deep copy (ModelParams copies otherwise alias the same tensors).
ModelParams clone_model(const ModelParams& params);

}  // namespace lgce
