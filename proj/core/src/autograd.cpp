#include "lgce/autograd.hpp"

#include <unordered_set>
#include <utility>

#include "lgce/errors.hpp"

namespace lgce {

namespace {

using detail::Node;

// Post-order over the nodes that require grad; reversed it is a valid
// execution order for the backward closures.
std::vector<Node*> topological_order(Node* root) {
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(root, 0);
  visited.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) stack.emplace_back(child, 0);
      continue;
    }
    order.push_back(node);
    stack.pop_back();
  }
  return order;
}

}  // namespace

void backward(const Tensor& loss, bool retain_graph) {
  if (!loss.defined()) throw GraphError("backward: undefined loss");
  Node* root = loss.node().get();
  if (root->data.size() != 1) {
    throw ShapeError("backward: loss must be a one-element tensor, got " + shape_to_string(root->shape));
  }
  if (root->freed) throw GraphError("backward: graph already freed (pass retain_graph to reuse it)");
  if (!root->requires_grad) throw GraphError("backward: loss does not depend on any tensor requiring grad");

  const std::vector<Node*> order = topological_order(root);
  for (Node* node : order) {
    if (node->is_leaf) continue;
    if (node->freed || !node->backward_fn) throw GraphError("backward: graph already freed");
    node->grad.assign(node->data.size(), 0.0f);
  }
  root->ensure_grad();
  root->grad[0] += 1.0f;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (!node->is_leaf) node->backward_fn(*node);
  }

  for (Node* node : order) {
    if (node->is_leaf) check_finite(node->grad, "gradient of leaf " + shape_to_string(node->shape));
  }

  if (!retain_graph) {
    for (Node* node : order) {
      if (node->is_leaf) continue;
      node->inputs.clear();
      node->backward_fn = nullptr;
      node->grad.clear();
      node->grad.shrink_to_fit();
      node->freed = true;
    }
  }
}

}  // namespace lgce
