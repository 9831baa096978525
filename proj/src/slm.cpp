#include "dlm/slm.hpp"

namespace dlm {

std::size_t slm_select_output(const Vec4& x, double r, SlmRule rule) {
  const double w = x[0] * x[0] + x[1] * x[1];
  switch (rule) {
    case SlmRule::weight_below_draw:
      return w <= r ? 0 : 1;
    case SlmRule::weight_above_draw:
    default:
      return r < w ? 0 : 1;
  }
}

}  // namespace dlm
