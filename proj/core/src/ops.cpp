#include "lgce/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lgce/errors.hpp"

namespace lgce {

namespace {

thread_local bool g_grad_enabled = true;

using detail::Node;
using RowMat = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMat>;
using ConstMatMap = Eigen::Map<const RowMat>;

// Reused im2col buffer; conv2d forward and backward never nest, so one per
// thread suffices.
float* col_scratch(std::size_t size) {
  thread_local std::vector<float> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer.data();
}

bool tracks(const Tensor& t) { return g_grad_enabled && t.requires_grad(); }

bool tracks(const std::shared_ptr<Node>& node) { return node->requires_grad; }

Tensor make_result(Shape shape, std::vector<float> values, std::vector<const Tensor*> inputs,
                   std::function<void(Node&)> backward_fn, const char* what) {
  check_finite(values, what);
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->data = std::move(values);
  bool any = false;
  for (const Tensor* input : inputs) any = any || tracks(*input);
  if (any) {
    node->requires_grad = true;
    node->is_leaf = false;
    for (const Tensor* input : inputs) node->inputs.push_back(input->node());
    node->backward_fn = std::move(backward_fn);
  }
  return Tensor(std::move(node));
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_to_string(a.shape()) + " vs " +
                     shape_to_string(b.shape()));
  }
}

struct ConvGeometry {
  std::size_t batch, in_channels, height, width;
  std::size_t out_channels, kernel;
  int stride, padding;
  std::size_t out_height, out_width;

  std::size_t col_rows() const { return in_channels * kernel * kernel; }
  std::size_t out_plane() const { return out_height * out_width; }
  bool direct() const { return kernel == 1 && stride == 1 && padding == 0; }
};

// Output columns [lo, hi) whose input column ox * stride + kx - padding lies
// inside [0, w).
std::pair<long, long> valid_columns(long kx, long w, long wo, int stride, int padding) {
  long lo = 0;
  while (lo < wo && lo * stride + kx - padding < 0) ++lo;
  long hi = wo;
  while (hi > lo && (hi - 1) * stride + kx - padding >= w) --hi;
  return {lo, hi};
}

// Unfolds one image (Cin x H x W) into a (Cin*K*K) x (Ho*Wo) matrix.
void im2col(const float* image, const ConvGeometry& g, float* col) {
  const auto k = static_cast<long>(g.kernel);
  const auto h = static_cast<long>(g.height);
  const auto w = static_cast<long>(g.width);
  const auto ho = static_cast<long>(g.out_height);
  const auto wo = static_cast<long>(g.out_width);
  for (long c = 0; c < static_cast<long>(g.in_channels); ++c) {
    const float* plane = image + c * h * w;
    for (long ky = 0; ky < k; ++ky) {
      for (long kx = 0; kx < k; ++kx) {
        float* row = col + ((c * k + ky) * k + kx) * ho * wo;
        const auto [lo, hi] = valid_columns(kx, w, wo, g.stride, g.padding);
        for (long oy = 0; oy < ho; ++oy) {
          const long iy = oy * g.stride + ky - g.padding;
          float* out = row + oy * wo;
          if (iy < 0 || iy >= h) {
            std::fill(out, out + wo, 0.0f);
            continue;
          }
          const float* src = plane + iy * w;
          const long shift = kx - g.padding;
          std::fill(out, out + lo, 0.0f);
          if (g.stride == 1) {
            std::copy(src + lo + shift, src + hi + shift, out + lo);
          } else {
            for (long ox = lo; ox < hi; ++ox) out[ox] = src[ox * g.stride + shift];
          }
          std::fill(out + hi, out + wo, 0.0f);
        }
      }
    }
  }
}

// Adjoint of im2col: scatters-adds a column matrix back into an image.
void col2im_add(const float* col, const ConvGeometry& g, float* image) {
  const auto k = static_cast<long>(g.kernel);
  const auto h = static_cast<long>(g.height);
  const auto w = static_cast<long>(g.width);
  const auto ho = static_cast<long>(g.out_height);
  const auto wo = static_cast<long>(g.out_width);
  for (long c = 0; c < static_cast<long>(g.in_channels); ++c) {
    float* plane = image + c * h * w;
    for (long ky = 0; ky < k; ++ky) {
      for (long kx = 0; kx < k; ++kx) {
        const float* row = col + ((c * k + ky) * k + kx) * ho * wo;
        const auto [lo, hi] = valid_columns(kx, w, wo, g.stride, g.padding);
        for (long oy = 0; oy < ho; ++oy) {
          const long iy = oy * g.stride + ky - g.padding;
          if (iy < 0 || iy >= h) continue;
          float* dst = plane + iy * w;
          const long shift = kx - g.padding;
          const float* src = row + oy * wo;
          for (long ox = lo; ox < hi; ++ox) dst[ox * g.stride + shift] += src[ox];
        }
      }
    }
  }
}

ConvGeometry conv_geometry(const Tensor& input, const Tensor& weight, const Tensor& bias, int stride,
                           int padding) {
  if (input.rank() != 4) throw ShapeError("conv2d: input must be N x C x H x W, got " + shape_to_string(input.shape()));
  if (weight.rank() != 4) throw ShapeError("conv2d: weight must be Cout x Cin x K x K, got " + shape_to_string(weight.shape()));
  ConvGeometry g{};
  g.batch = input.dim(0);
  g.in_channels = input.dim(1);
  g.height = input.dim(2);
  g.width = input.dim(3);
  g.out_channels = weight.dim(0);
  g.kernel = weight.dim(2);
  g.stride = stride;
  g.padding = padding;
  if (weight.dim(1) != g.in_channels) {
    throw ShapeError("conv2d: input has " + std::to_string(g.in_channels) + " channels, weight expects " +
                     std::to_string(weight.dim(1)));
  }
  if (weight.dim(3) != g.kernel || (g.kernel != 1 && g.kernel != 3)) {
    throw ShapeError("conv2d: kernel must be 1x1 or 3x3, got " + shape_to_string(weight.shape()));
  }
  if (bias.shape() != Shape{g.out_channels}) {
    throw ShapeError("conv2d: bias shape " + shape_to_string(bias.shape()) + " does not match Cout " +
                     std::to_string(g.out_channels));
  }
  if (stride != 1 && stride != 2) throw ShapeError("conv2d: stride must be 1 or 2");
  if (padding < 0) throw ShapeError("conv2d: padding must be non-negative");
  if (stride == 2 && (g.height % 2 != 0 || g.width % 2 != 0)) {
    throw ShapeError("conv2d: stride 2 requires even spatial dims, got " + shape_to_string(input.shape()));
  }
  const long span_h = static_cast<long>(g.height) + 2 * padding - static_cast<long>(g.kernel);
  const long span_w = static_cast<long>(g.width) + 2 * padding - static_cast<long>(g.kernel);
  if (span_h < 0 || span_w < 0) throw ShapeError("conv2d: kernel larger than padded input");
  g.out_height = static_cast<std::size_t>(span_h / stride + 1);
  g.out_width = static_cast<std::size_t>(span_w / stride + 1);
  return g;
}

}  // namespace

bool grad_mode_enabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

Tensor conv2d(const Tensor& input, const Tensor& weight, const Tensor& bias, int stride, int padding) {
  const ConvGeometry g = conv_geometry(input, weight, bias, stride, padding);
  const std::size_t in_image = g.in_channels * g.height * g.width;
  const std::size_t out_image = g.out_channels * g.out_plane();

  std::vector<float> out(g.batch * out_image);
  float* col = g.direct() ? nullptr : col_scratch(g.col_rows() * g.out_plane());
  const ConstMatMap w(weight.data().data(), g.out_channels, g.col_rows());
  const Eigen::Map<const Eigen::VectorXf> b(bias.data().data(), g.out_channels);
  for (std::size_t n = 0; n < g.batch; ++n) {
    const float* image = input.data().data() + n * in_image;
    const float* col_data = image;
    if (!g.direct()) {
      im2col(image, g, col);
      col_data = col;
    }
    MatMap o(out.data() + n * out_image, g.out_channels, g.out_plane());
    o.noalias() = w * ConstMatMap(col_data, g.col_rows(), g.out_plane());
    o.colwise() += b;
  }

  auto backward_fn = [g](Node& self) {
    const auto& in = self.inputs[0];
    const auto& wt = self.inputs[1];
    const auto& bs = self.inputs[2];
    const std::size_t in_image = g.in_channels * g.height * g.width;
    const std::size_t out_image = g.out_channels * g.out_plane();
    float* col = g.direct() ? nullptr : col_scratch(g.col_rows() * g.out_plane());
    const ConstMatMap w(wt->data.data(), g.out_channels, g.col_rows());

    if (tracks(bs)) {
      bs->ensure_grad();
      for (std::size_t co = 0; co < g.out_channels; ++co) {
        double sum = 0.0;
        for (std::size_t n = 0; n < g.batch; ++n) {
          const float* go = self.grad.data() + n * out_image + co * g.out_plane();
          for (std::size_t i = 0; i < g.out_plane(); ++i) sum += go[i];
        }
        bs->grad[co] += static_cast<float>(sum);
      }
    }
    if (tracks(wt)) wt->ensure_grad();
    if (tracks(in)) in->ensure_grad();
    for (std::size_t n = 0; n < g.batch; ++n) {
      const ConstMatMap go(self.grad.data() + n * out_image, g.out_channels, g.out_plane());
      if (tracks(wt)) {
        const float* col_data = in->data.data() + n * in_image;
        if (!g.direct()) {
          im2col(col_data, g, col);
          col_data = col;
        }
        MatMap gw(wt->grad.data(), g.out_channels, g.col_rows());
        gw.noalias() += go * ConstMatMap(col_data, g.col_rows(), g.out_plane()).transpose();
      }
      if (tracks(in)) {
        float* gin = in->grad.data() + n * in_image;
        if (g.direct()) {
          MatMap(gin, g.in_channels, g.out_plane()).noalias() += w.transpose() * go;
        } else {
          MatMap dcol(col, g.col_rows(), g.out_plane());
          dcol.noalias() = w.transpose() * go;
          col2im_add(col, g, gin);
        }
      }
    }
  };

  return make_result({g.batch, g.out_channels, g.out_height, g.out_width}, std::move(out),
                     {&input, &weight, &bias}, std::move(backward_fn), "conv2d output");
}

namespace {

// out[y][x] (+)= (sum of the zero-padded 3x3 neighbourhood) / 9, per plane.
void box3_planes(const float* src, float* dst, std::size_t planes, std::size_t h, std::size_t w,
                 bool accumulate) {
  const auto hh = static_cast<long>(h);
  const auto ww = static_cast<long>(w);
  for (std::size_t p = 0; p < planes; ++p) {
    const float* in = src + p * h * w;
    float* out = dst + p * h * w;
    for (long y = 0; y < hh; ++y) {
      for (long x = 0; x < ww; ++x) {
        float sum = 0.0f;
        for (long dy = -1; dy <= 1; ++dy) {
          const long yy = y + dy;
          if (yy < 0 || yy >= hh) continue;
          for (long dx = -1; dx <= 1; ++dx) {
            const long xx = x + dx;
            if (xx < 0 || xx >= ww) continue;
            sum += in[yy * ww + xx];
          }
        }
        const float value = sum / 9.0f;
        if (accumulate) {
          out[y * ww + x] += value;
        } else {
          out[y * ww + x] = value;
        }
      }
    }
  }
}

}  // namespace

Tensor avg_pool3(const Tensor& input) {
  if (input.rank() != 4) throw ShapeError("avg_pool3: input must be N x C x H x W");
  const std::size_t planes = input.dim(0) * input.dim(1);
  const std::size_t h = input.dim(2);
  const std::size_t w = input.dim(3);
  std::vector<float> out(input.numel());
  box3_planes(input.data().data(), out.data(), planes, h, w, false);
  // The zero-padded box filter is symmetric, so it is its own adjoint.
  auto backward_fn = [planes, h, w](Node& self) {
    auto& in = self.inputs[0];
    in->ensure_grad();
    box3_planes(self.grad.data(), in->grad.data(), planes, h, w, true);
  };
  return make_result(input.shape(), std::move(out), {&input}, std::move(backward_fn), "avg_pool3 output");
}

Tensor leaky_relu(const Tensor& input, float slope) {
  const auto x = input.data();
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] >= 0.0f ? x[i] : slope * x[i];
  auto backward_fn = [slope](Node& self) {
    auto& in = self.inputs[0];
    in->ensure_grad();
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      in->grad[i] += in->data[i] >= 0.0f ? self.grad[i] : slope * self.grad[i];
    }
  };
  return make_result(input.shape(), std::move(out), {&input}, std::move(backward_fn), "leaky_relu output");
}

Tensor relu(const Tensor& input) {
  const auto x = input.data();
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > 0.0f ? x[i] : 0.0f;
  auto backward_fn = [](Node& self) {
    auto& in = self.inputs[0];
    in->ensure_grad();
    for (std::size_t i = 0; i < self.grad.size(); ++i) {
      if (in->data[i] >= 0.0f) in->grad[i] += self.grad[i];
    }
  };
  return make_result(input.shape(), std::move(out), {&input}, std::move(backward_fn), "relu output");
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  const auto x = a.data();
  const auto y = b.data();
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  auto backward_fn = [](Node& self) {
    for (auto& in : self.inputs) {
      if (!tracks(in)) continue;
      in->ensure_grad();
      for (std::size_t i = 0; i < self.grad.size(); ++i) in->grad[i] += self.grad[i];
    }
  };
  return make_result(a.shape(), std::move(out), {&a, &b}, std::move(backward_fn), "add output");
}

Tensor scale(const Tensor& x, const Tensor& beta) {
  if (beta.numel() != 1) throw ShapeError("scale: beta must have exactly one element");
  const float factor = beta.item();
  const auto values = x.data();
  std::vector<float> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = factor * values[i];
  auto backward_fn = [](Node& self) {
    auto& in = self.inputs[0];
    auto& gate = self.inputs[1];
    if (tracks(in)) {
      in->ensure_grad();
      const float factor = gate->data[0];
      for (std::size_t i = 0; i < self.grad.size(); ++i) in->grad[i] += factor * self.grad[i];
    }
    if (tracks(gate)) {
      gate->ensure_grad();
      double sum = 0.0;
      for (std::size_t i = 0; i < self.grad.size(); ++i) {
        sum += static_cast<double>(self.grad[i]) * in->data[i];
      }
      gate->grad[0] += static_cast<float>(sum);
    }
  };
  return make_result(x.shape(), std::move(out), {&x, &beta}, std::move(backward_fn), "scale output");
}

Tensor l1_loss(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "l1_loss");
  const auto p = pred.data();
  const auto t = target.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(static_cast<double>(p[i]) - t[i]);
  const double mean = sum / static_cast<double>(p.size());
  // Only pred is recorded as an input: the target never receives gradient.
  auto backward_fn = [target_node = target.node()](Node& self) {
    auto& in = self.inputs[0];
    in->ensure_grad();
    const float step = self.grad[0] / static_cast<float>(in->data.size());
    for (std::size_t i = 0; i < in->data.size(); ++i) {
      const float diff = in->data[i] - target_node->data[i];
      if (diff > 0.0f) {
        in->grad[i] += step;
      } else if (diff < 0.0f) {
        in->grad[i] -= step;
      }
    }
  };
  return make_result({1}, {static_cast<float>(mean)}, {&pred}, std::move(backward_fn), "l1_loss");
}

}  // namespace lgce
