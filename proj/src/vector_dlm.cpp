#include "dlm/vector_dlm.hpp"

namespace dlm {

Vec2 angle_to_vector(double radians) { return {std::cos(radians), std::sin(radians)}; }

double vector_to_angle(const Vec2& y) {
  if (!all_finite(y) || !(norm(y) > 0.0)) throw std::invalid_argument("vector_to_angle: zero or non-finite vector");
  return std::atan2(y[1], y[0]);
}

Vec4 FrontEndDlm::completed_input(std::size_t channel, const Vec2& y) const {
  const Vec4& x = inner_.state();
  switch (channel) {
    case 0:
      return {y[0], y[1], x[2], x[3]};
    case 1:
      return {x[0], x[1], y[0], y[1]};
    default:
      throw std::invalid_argument("FrontEndDlm: channel must be 0 or 1");
  }
}

std::vector<double> iterate_random_theta(const Vec2& x0, const std::vector<int>& thetas, double alpha) {
  if (std::abs(norm(x0) - 1.0) > 1e-9) throw std::invalid_argument("iterate_random_theta: x0 must be a unit vector");
  const double a2 = alpha * alpha;
  std::vector<double> out;
  out.reserve(thetas.size() + 1);
  double x1sq = x0[0] * x0[0];
  out.push_back(x1sq);
  for (int t : thetas) {
    if (t != 0 && t != 1) throw std::invalid_argument("iterate_random_theta: theta must be 0 or 1");
    x1sq = a2 * x1sq + (1.0 - a2) * t;
    out.push_back(x1sq);
  }
  return out;
}

}  // namespace dlm
