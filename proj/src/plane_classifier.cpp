#include "dlm/plane_classifier.hpp"

#include <algorithm>

namespace dlm {

SegmentState SegmentState::initial(const Vec2& first_event, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!all_finite(first_event)) throw std::invalid_argument("SegmentState: non-finite event");
  return SegmentState{first_event, {1.0, 0.0}, alpha};
}

int segment_side(const Vec2& mid, const Vec2& dir, const Vec2& y) {
  const Vec2 a = y - mid;
  const double cross = a[0] * dir[1] - a[1] * dir[0];
  return cross >= 0.0 ? +1 : -1;
}

SegmentStep step_segment(const SegmentState& st, const Vec2& y, PointRule rule) {
  if (!all_finite(y)) throw std::invalid_argument("step_segment: non-finite event");
  SegmentStep out{segment_side(st.mid, st.dir, y), st, false};

  const Vec2 half = scaled(st.dir, 0.5);
  const Vec2 v1 = move_support_point(st.mid - half, y, st.alpha, rule);
  const Vec2 v2 = move_support_point(st.mid + half, y, st.alpha, rule);

  out.next.mid = scaled(v1 + v2, 0.5);
  // Oriented from v1 to v2 so dir keeps its sign from event to event.
  const Vec2 d = v2 - v1;
  const double n = norm(d);
  if (n > 1e-12) {
    out.next.dir = scaled(d, 1.0 / n);
  } else {
    out.degenerate = true;
  }
  return out;
}

double line_angle_deg(const Vec2& a, const Vec2& b) {
  const double c = std::abs(dot(a, b)) / (norm(a) * norm(b));
  return rad_to_deg(std::acos(std::min(1.0, c)));
}

Vec2 generate_rotating_gaussians(double gamma, std::size_t n, Rng& rng) {
  const double s = rng.bit() ? 1.0 : 0.0;
  const double phase = (gamma * static_cast<double>(n) + s) * kPi;
  const double sd = std::sqrt(0.5);
  const double r1 = rng.normal(0.0, sd);
  const double r2 = rng.normal(0.0, sd);
  return {std::cos(phase) + r1, std::sin(phase) + r2};
}

PcaResult pca_oracle(std::span<const Vec2> points) {
  if (points.size() < 2) throw std::invalid_argument("pca_oracle: need at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p[0];
    my += p[1];
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double dx = p[0] - mx, dy = p[1] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  sxx /= n - 1.0;
  syy /= n - 1.0;
  sxy /= n - 1.0;
  const double trace = sxx + syy;
  if (!(trace > 0.0)) throw std::invalid_argument("pca_oracle: all points identical");

  const double half_gap = std::hypot(0.5 * (sxx - syy), sxy);
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  PcaResult r;
  r.principal = {std::cos(theta), std::sin(theta)};
  r.lambda_major = 0.5 * trace + half_gap;
  r.lambda_minor = 0.5 * trace - half_gap;
  r.near_degenerate = 2.0 * half_gap < 1e-9 * trace;
  return r;
}

}  // namespace dlm
