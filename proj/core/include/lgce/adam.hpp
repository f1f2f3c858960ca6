#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lgce/tensor.hpp"

namespace lgce {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment estimates, one pair per parameter, plus the
/// number of updates applied so far.
struct AdamState {
  std::vector<std::vector<float>> first_moment;
  std::vector<std::vector<float>> second_moment;
  std::uint64_t step = 0;

  static AdamState for_params(std::span<const Tensor> params);
};

/// One bias-corrected Adam update of every parameter from its accumulated
/// gradient. A parameter without a gradient is treated as having a zero
/// gradient. Throws NumericError (leaving everything untouched) if any
/// gradient is non-finite, ShapeError if the state does not match params.
void adam_step(std::span<Tensor> params, AdamState& state, double lr,
               const AdamOptions& options = {});

}  // namespace lgce
