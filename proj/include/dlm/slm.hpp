#pragma once

// Stochastic output selection: learning stays deterministic, only the choice
// of output channel is randomized.

#include <cstddef>

#include "dlm/vec.hpp"

namespace dlm {

enum class SlmRule {
  /// Channel 0 iff r < x1^2 + x2^2, so P(channel 0) = x1^2 + x2^2.
  weight_above_draw,
  /// Channel 0 iff x1^2 + x2^2 <= r. Gives P(channel 0) = 1 - (x1^2 + x2^2);
  /// kept for comparison runs only.
  weight_below_draw,
};

/// `x` is the back-end internal vector, `r` a uniform draw from (0, 1).
std::size_t slm_select_output(const Vec4& x, double r, SlmRule rule = SlmRule::weight_above_draw);

}  // namespace dlm
