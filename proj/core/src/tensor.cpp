#include "lgce/tensor.hpp"

#include <cmath>
#include <sstream>

#include "lgce/errors.hpp"

namespace lgce {

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t extent : shape) n *= extent;
  return n;
}

std::string shape_to_string(const Shape& shape) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out << 'x';
    out << shape[i];
  }
  out << ']';
  return out.str();
}

void check_finite(std::span<const float> values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << "non-finite value " << values[i] << " at index " << i << " in " << what;
      throw NumericError(msg.str());
    }
  }
}

namespace detail {

void Node::ensure_grad() {
  if (grad.size() != data.size()) grad.assign(data.size(), 0.0f);
}

}  // namespace detail

namespace {

void validate_shape(const Shape& shape) {
  if (shape.empty()) throw ShapeError("tensor shape must have at least one extent");
  for (std::size_t extent : shape) {
    if (extent == 0) throw ShapeError("tensor extents must be positive, got " + shape_to_string(shape));
  }
}

const detail::Node& require(const std::shared_ptr<detail::Node>& node) {
  if (!node) throw GraphError("use of an undefined tensor");
  return *node;
}

}  // namespace

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0f, requires_grad); }

Tensor Tensor::full(Shape shape, float value, bool requires_grad) {
  validate_shape(shape);
  std::vector<float> values(shape_numel(shape), value);
  return from_data(std::move(shape), std::move(values), requires_grad);
}

Tensor Tensor::from_data(Shape shape, std::vector<float> values, bool requires_grad) {
  validate_shape(shape);
  if (values.size() != shape_numel(shape)) {
    throw ShapeError("data length " + std::to_string(values.size()) + " does not match shape " +
                     shape_to_string(shape));
  }
  auto node = std::make_shared<detail::Node>();
  node->shape = std::move(shape);
  node->data = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(float value, bool requires_grad) { return full({1}, value, requires_grad); }

const Shape& Tensor::shape() const { return require(node_).shape; }
std::size_t Tensor::numel() const { return require(node_).data.size(); }

std::span<const float> Tensor::data() const { return require(node_).data; }

std::span<float> Tensor::mutable_data() {
  require(node_);
  return node_->data;
}

float Tensor::item() const {
  if (numel() != 1) throw ShapeError("item() on tensor of shape " + shape_to_string(shape()));
  return node_->data[0];
}

bool Tensor::requires_grad() const { return require(node_).requires_grad; }

void Tensor::set_requires_grad(bool on) {
  require(node_);
  if (!node_->is_leaf) throw GraphError("requires_grad can only be changed on leaf tensors");
  node_->requires_grad = on;
}

bool Tensor::is_leaf() const { return require(node_).is_leaf; }

bool Tensor::has_grad() const { return !require(node_).grad.empty(); }

std::span<const float> Tensor::grad() const { return require(node_).grad; }

std::span<float> Tensor::mutable_grad() {
  require(node_);
  node_->ensure_grad();
  return node_->grad;
}

void Tensor::zero_grad() {
  require(node_);
  if (!node_->grad.empty()) std::fill(node_->grad.begin(), node_->grad.end(), 0.0f);
}

Tensor Tensor::clone() const {
  const auto& node = require(node_);
  return from_data(node.shape, node.data, false);
}

}  // namespace lgce
