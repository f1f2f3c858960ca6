#include "lgce/network.hpp"

#include <cmath>
#include <numeric>

#include "lgce/errors.hpp"

namespace lgce {

namespace {

ConvParams make_conv(std::size_t in, std::size_t out, std::size_t kernel, int stride, Rng* rng) {
  ConvParams conv;
  conv.stride = stride;
  std::vector<float> weights(out * in * kernel * kernel, 0.0f);
  if (rng) {
    const double stddev = std::sqrt(2.0 / static_cast<double>(in * kernel * kernel));
    for (auto& w : weights) w = static_cast<float>(rng->normal(0.0, stddev));
  }
  conv.weight = Tensor::from_data({out, in, kernel, kernel}, std::move(weights), true);
  conv.bias = Tensor::zeros({out}, true);
  return conv;
}

AuParams make_au(std::size_t c, Rng* rng) {
  AuParams au;
  au.c1_direct = make_conv(c, c, 1, 1, rng);
  au.c1_to_c3 = make_conv(c, c, 1, 1, rng);
  au.c1_to_pool = make_conv(c, c, 1, 1, rng);
  au.c3_after_c1 = make_conv(c, c, 3, 1, rng);
  au.c3_direct = make_conv(c, c, 3, 1, rng);
  return au;
}

ModelParams make_model(const NetworkConfig& config, Rng* rng) {
  const std::size_t c = config.feature_width;
  if (c == 0) throw ShapeError("feature width must be positive");
  ModelParams p;
  p.config = config;
  p.grab.conv_in = make_conv(1, c, 3, 1, rng);
  p.grab.ru.shallow = make_au(c, rng);
  p.grab.ru.deep = make_au(c, rng);
  p.grab.ru.conv = make_conv(c, c, 3, 1, rng);
  for (auto& gate : p.grab.gates) gate = Tensor::scalar(rng ? config.gate_init : 0.0f, true);
  p.fuse = make_conv(c, c, 3, 1, rng);
  for (std::size_t f = 0; f < kFebCount; ++f) {
    for (std::size_t l = 0; l < kFebDepth; ++l) {
      p.febs[f].layers[l] = make_conv((f == 0 && l == 0) ? 1 : c, c, 3, 1, rng);
    }
  }
  p.luma_down = make_conv(c, c, 3, 2, rng);
  for (std::size_t l = 0; l < kHeadLayers; ++l) {
    p.head[l] = make_conv(c, l + 1 == kHeadLayers ? 1 : c, 3, 1, rng);
  }
  return p;
}

void append_conv(std::vector<NamedTensor>& out, const ConvParams& conv, const std::string& prefix) {
  out.push_back({prefix + ".weight", conv.weight});
  out.push_back({prefix + ".bias", conv.bias});
}

void append(std::vector<NamedTensor>& out, std::vector<NamedTensor> more) {
  for (auto& item : more) out.push_back(std::move(item));
}

void require_channels(const Tensor& x, std::size_t channels, const char* where) {
  if (x.rank() != 4 || x.dim(1) != channels) {
    throw ShapeError(std::string(where) + ": expected " + std::to_string(channels) + " channels, got " +
                     shape_to_string(x.shape()));
  }
}

}  // namespace

Tensor apply_conv(const ConvParams& conv, const Tensor& x) {
  const int padding = static_cast<int>((conv.kernel() - 1) / 2);
  return conv2d(x, conv.weight, conv.bias, conv.stride, padding);
}

std::vector<NamedTensor> named_parameters(const AuParams& p, const std::string& prefix) {
  std::vector<NamedTensor> out;
  append_conv(out, p.c1_direct, prefix + ".c1_direct");
  append_conv(out, p.c1_to_c3, prefix + ".c1_to_c3");
  append_conv(out, p.c1_to_pool, prefix + ".c1_to_pool");
  append_conv(out, p.c3_after_c1, prefix + ".c3_after_c1");
  append_conv(out, p.c3_direct, prefix + ".c3_direct");
  return out;
}

std::vector<NamedTensor> named_parameters(const RuSharedParams& p, const std::string& prefix) {
  std::vector<NamedTensor> out = named_parameters(p.shallow, prefix + ".shallow");
  append(out, named_parameters(p.deep, prefix + ".deep"));
  append_conv(out, p.conv, prefix + ".conv");
  return out;
}

std::vector<NamedTensor> named_parameters(const GrabParams& p, const std::string& prefix) {
  std::vector<NamedTensor> out;
  append_conv(out, p.conv_in, prefix + ".conv_in");
  append(out, named_parameters(p.ru, prefix + ".ru"));
  for (std::size_t i = 0; i < p.gates.size(); ++i) {
    out.push_back({prefix + ".gate." + std::to_string(i + 1), p.gates[i]});
  }
  return out;
}

std::vector<NamedTensor> named_parameters(const ModelParams& p) {
  std::vector<NamedTensor> out = named_parameters(p.grab, "grab");
  append_conv(out, p.fuse, "fuse");
  for (std::size_t f = 0; f < kFebCount; ++f) {
    for (std::size_t l = 0; l < kFebDepth; ++l) {
      append_conv(out, p.febs[f].layers[l], "feb." + std::to_string(f) + ".conv." + std::to_string(l));
    }
  }
  append_conv(out, p.luma_down, "luma_down");
  for (std::size_t l = 0; l < kHeadLayers; ++l) append_conv(out, p.head[l], "head." + std::to_string(l));
  return out;
}

std::vector<Tensor> parameter_list(const ModelParams& params) {
  std::vector<Tensor> out;
  for (auto& named : named_parameters(params)) out.push_back(named.tensor);
  return out;
}

ModelParams init_model(const NetworkConfig& config, Rng& rng) { return make_model(config, &rng); }

ModelParams zero_model(const NetworkConfig& config) { return make_model(config, nullptr); }

Tensor au_forward(const Tensor& x, const AuParams& p, float slope) {
  require_channels(x, p.c1_direct.in_channels(), "au_forward");
  Tensor z = apply_conv(p.c1_direct, x);
  z = add(z, apply_conv(p.c3_after_c1, apply_conv(p.c1_to_c3, x)));
  z = add(z, avg_pool3(apply_conv(p.c1_to_pool, x)));
  z = add(z, apply_conv(p.c3_direct, x));
  return leaky_relu(z, slope);
}

Tensor ru_forward(const Tensor& y_prev, const RuSharedParams& p, const Tensor& gate, float slope) {
  require_channels(y_prev, p.shallow.c1_direct.in_channels(), "ru_forward");
  const Tensor a1 = au_forward(y_prev, p.shallow, slope);
  const Tensor a2 = au_forward(a1, p.deep, slope);
  const Tensor a3 = au_forward(add(a2, a1), p.deep, slope);
  const Tensor a4 = au_forward(add(a3, a1), p.deep, slope);
  return add(scale(apply_conv(p.conv, a4), gate), y_prev);
}

Tensor grab_forward(const Tensor& chroma, const GrabParams& p, float slope) {
  require_channels(chroma, 1, "grab_forward");
  Tensor y = apply_conv(p.conv_in, chroma);
  for (const Tensor& gate : p.gates) y = ru_forward(y, p.ru, gate, slope);
  return y;
}

Tensor feb_forward(const Tensor& gamma0, const FebParams& p) {
  require_channels(gamma0, p.layers[0].in_channels(), "feb_forward");
  Tensor gamma = relu(apply_conv(p.layers[0], gamma0));
  Tensor sum = gamma;
  for (std::size_t i = 1; i < p.layers.size(); ++i) {
    gamma = relu(apply_conv(p.layers[i], gamma));
    sum = add(sum, gamma);
  }
  return sum;
}

Tensor luma_branch(const Tensor& luma, const ModelParams& p) {
  require_channels(luma, 1, "luma_branch");
  if (luma.dim(2) % 2 != 0 || luma.dim(3) % 2 != 0) {
    throw ShapeError("luma_branch: luma dims must be even, got " + shape_to_string(luma.shape()));
  }
  Tensor features = luma;
  for (const FebParams& feb : p.febs) features = feb_forward(features, feb);
  return apply_conv(p.luma_down, features);
}

Tensor model_forward(const Tensor& chroma, const Tensor& luma, const ModelParams& p) {
  require_channels(chroma, 1, "model_forward");
  require_channels(luma, 1, "model_forward");
  if (luma.dim(0) != chroma.dim(0) || luma.dim(2) != 2 * chroma.dim(2) || luma.dim(3) != 2 * chroma.dim(3)) {
    throw ShapeError("model_forward: luma " + shape_to_string(luma.shape()) +
                     " must be twice the chroma size " + shape_to_string(chroma.shape()));
  }
  const float slope = p.config.leaky_slope;
  Tensor fused = apply_conv(p.fuse, grab_forward(chroma, p.grab, slope));
  if (p.config.luma_guidance) fused = add(fused, luma_branch(luma, p));
  Tensor x = fused;
  for (std::size_t l = 0; l + 1 < kHeadLayers; ++l) x = leaky_relu(apply_conv(p.head[l], x), slope);
  return add(apply_conv(p.head[kHeadLayers - 1], x), chroma);
}

std::size_t count_scalars(const std::vector<NamedTensor>& tensors) {
  std::size_t n = 0;
  for (const auto& t : tensors) n += t.tensor.numel();
  return n;
}

std::size_t ParamTable::total() const {
  return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0},
                         [](std::size_t acc, const BlockCount& b) { return acc + b.count; });
}

ParamTable param_count(const ModelParams& p) {
  ParamTable table;
  table.blocks.push_back({"grab", count_scalars(named_parameters(p.grab))});
  table.blocks.push_back({"fuse", p.fuse.weight.numel() + p.fuse.bias.numel()});
  for (std::size_t f = 0; f < kFebCount; ++f) {
    std::size_t n = 0;
    for (const auto& layer : p.febs[f].layers) n += layer.weight.numel() + layer.bias.numel();
    table.blocks.push_back({"feb." + std::to_string(f), n});
  }
  table.blocks.push_back({"luma_down", p.luma_down.weight.numel() + p.luma_down.bias.numel()});
  std::size_t head = 0;
  for (const auto& layer : p.head) head += layer.weight.numel() + layer.bias.numel();
  table.blocks.push_back({"head", head});
  return table;
}

}  // namespace lgce

namespace lgce {

ModelParams clone_model(const ModelParams& params) {
  ModelParams copy = zero_model(params.config);
  auto src = named_parameters(params);
  auto dst = named_parameters(copy);
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto values = src[i].tensor.data();
    std::copy(values.begin(), values.end(), dst[i].tensor.mutable_data().begin());
  }
  return copy;
}

}  // namespace lgce
