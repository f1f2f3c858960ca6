#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lgce {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& shape);
std::string shape_to_string(const Shape& shape);

namespace detail {

// One vertex of the autograd graph. Leaves own parameters or inputs; interior
// nodes additionally keep their inputs and a closure that pushes the node's
// gradient into them.
struct Node {
  Shape shape;
  std::vector<float> data;
  std::vector<float> grad;  // empty until a gradient is first written
  bool requires_grad = false;
  bool is_leaf = true;
  bool freed = false;
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node&)> backward_fn;

  void ensure_grad();
};

}  // namespace detail

/// Dense N-D float32 array with optional gradient tracking.
///
/// Tensor is a shared handle: copies alias the same storage, as with
/// framework tensors. Use clone() for an independent copy. Activations use
/// N x C x H x W layout; convolution weights use Cout x Cin x K x K.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, float value, bool requires_grad = false);
  static Tensor from_data(Shape shape, std::vector<float> values, bool requires_grad = false);
  static Tensor scalar(float value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  std::size_t rank() const { return shape().size(); }
  std::size_t dim(std::size_t i) const { return shape().at(i); }
  std::size_t numel() const;

  std::span<const float> data() const;
  /// Writable view of the values. Intended for leaves (parameters, inputs);
  /// mutating an interior node invalidates any graph that consumed it.
  std::span<float> mutable_data();
  float item() const;
  float at(std::size_t flat_index) const { return data()[flat_index]; }

  bool requires_grad() const;
  void set_requires_grad(bool on);
  bool is_leaf() const;

  bool has_grad() const;
  std::span<const float> grad() const;
  std::span<float> mutable_grad();
  void zero_grad();

  /// Deep copy of the values as a new leaf (no graph, no gradient).
  Tensor clone() const;
  /// Same values as a new leaf that does not require grad.
  Tensor detach() const { return clone(); }

  bool same_storage(const Tensor& other) const { return node_ == other.node_; }

  const std::shared_ptr<detail::Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<detail::Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<detail::Node> node_;
};

/// Throws NumericError naming `what` if any value is NaN or Inf.
void check_finite(std::span<const float> values, const std::string& what);

}  // namespace lgce
