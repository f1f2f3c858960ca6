#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lgce/tensor.hpp"
#include "reference.hpp"

namespace lgce::test {

/// One differentiable op under test: the library version on Tensors and the
/// float64 oracle on ref::Arrays, over the same inputs.
struct GradCase {
  std::string name;
  std::vector<Shape> input_shapes;
  std::function<Tensor(const std::vector<Tensor>&)> lib;
  std::function<ref::Array(const std::vector<ref::Array>&)> ref;
  /// Keep every input at least this far from zero (kinks of the ReLUs).
  double min_magnitude = 0.0;
  /// lib/ref already return the scalar loss (the L1 op itself).
  bool is_loss = false;
};

struct GradResult {
  std::string name;
  std::size_t points = 0;
  double max_rel_error = 0.0;
};

/// The library's differentiable ops, including every conv2d kernel/stride
/// combination the network uses.
std::vector<GradCase> op_cases();

/// Central differences (step h) on the float64 oracle versus the analytic
/// backward pass, at `points` random input draws. Error per input is
/// max|analytic - numeric| / max|numeric|.
GradResult check_gradients(const GradCase& c, std::size_t points, std::uint64_t seed, double h = 1e-3);

}  // namespace lgce::test
