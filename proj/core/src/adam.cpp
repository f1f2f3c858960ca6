#include "lgce/adam.hpp"

#include <cmath>

#include "lgce/errors.hpp"

namespace lgce {

AdamState AdamState::for_params(std::span<const Tensor> params) {
  AdamState state;
  for (const Tensor& p : params) {
    state.first_moment.emplace_back(p.numel(), 0.0f);
    state.second_moment.emplace_back(p.numel(), 0.0f);
  }
  return state;
}

void adam_step(std::span<Tensor> params, AdamState& state, double lr, const AdamOptions& options) {
  if (state.first_moment.size() != params.size() || state.second_moment.size() != params.size()) {
    throw ShapeError("adam_step: optimizer state tracks " + std::to_string(state.first_moment.size()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (state.first_moment[i].size() != params[i].numel() || state.second_moment[i].size() != params[i].numel()) {
      throw ShapeError("adam_step: moment shape mismatch for parameter " + std::to_string(i));
    }
    if (params[i].has_grad()) check_finite(params[i].grad(), "gradient of parameter " + std::to_string(i));
  }

  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(options.beta1, t);
  const double correction2 = 1.0 - std::pow(options.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& param = params[i];
    if (!param.has_grad()) {
      // Zero gradient: decay the moments exactly as a zero-valued update would.
      for (auto& m : state.first_moment[i]) m = static_cast<float>(options.beta1 * m);
      for (auto& v : state.second_moment[i]) v = static_cast<float>(options.beta2 * v);
    }
    auto values = param.mutable_data();
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (param.has_grad()) {
        const double g = param.grad()[j];
        m[j] = static_cast<float>(options.beta1 * m[j] + (1.0 - options.beta1) * g);
        v[j] = static_cast<float>(options.beta2 * v[j] + (1.0 - options.beta2) * g * g);
      }
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      values[j] = static_cast<float>(values[j] - lr * m_hat / (std::sqrt(v_hat) + options.epsilon));
    }
  }
}

}  // namespace lgce
