#pragma once

#include "lgce/tensor.hpp"

namespace lgce {

/// Reverse-mode sweep from a one-element loss.
///
/// Gradients accumulate into every reachable leaf that requires grad; call
/// zero_grad() on the leaves to reset. Unless retain_graph is set the graph
/// is released afterwards and a second call on the same loss throws
/// GraphError.
void backward(const Tensor& loss, bool retain_graph = false);

}  // namespace lgce
