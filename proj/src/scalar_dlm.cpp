#include "dlm/scalar_dlm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dlm {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

PositionDlm::PositionDlm(double x0, double alpha) : x_(x0), alpha_(alpha) {
  check_alpha(alpha);
  if (!std::isfinite(x0)) throw std::invalid_argument("PositionDlm: non-finite initial state");
}

PositionDlm::Step PositionDlm::step(double y) {
  if (!(std::abs(y) <= 1.0)) throw std::invalid_argument("PositionDlm: input must lie in [-1, 1]");
  const int delta = x_ <= y ? +1 : -1;
  x_ = alpha_ * x_ + (1.0 - alpha_) * y;
  return {delta};
}

double closed_form_position(double x0, std::span<const double> ys, double alpha) {
  check_alpha(alpha);
  const std::size_t n = ys.size();
  double sum = 0.0;
  double weight = 1.0;  // alpha^(n-1-i), accumulated from the newest input backwards
  for (std::size_t k = n; k-- > 0;) {
    if (!(std::abs(ys[k]) <= 1.0)) throw std::invalid_argument("closed_form_position: input must lie in [-1, 1]");
    sum += weight * ys[k];
    weight *= alpha;
  }
  // weight == alpha^n here
  return weight * x0 + (1.0 - alpha) * sum;
}

IntervalDlm::IntervalDlm(double x0, double alpha) : x_(x0), alpha_(alpha) {
  check_alpha(alpha);
  if (!(std::abs(x0) <= 1.0)) throw std::invalid_argument("IntervalDlm: initial state must lie in [-1, 1]");
}

IntervalDlm::Step IntervalDlm::step(double y) {
  if (!(std::abs(y) < 1.0)) throw std::invalid_argument("IntervalDlm: input must lie in (-1, 1)");
  const double base = y - alpha_ * x_;
  const double up = std::abs(base - (1.0 - alpha_));
  const double down = std::abs(base + (1.0 - alpha_));
  const int delta = up <= down ? +1 : -1;
  x_ = alpha_ * x_ + (1.0 - alpha_) * delta;
  return {delta};
}

Emission<double> PositionNode::receive(std::size_t input, const double& y) {
  if (input != 0) throw NetworkError("position-dlm has a single input");
  const auto s = dlm_.step(y);
  return {s.delta > 0 ? std::size_t{1} : std::size_t{0}, y};
}

ScalarNetwork build_three_level_classifier(double alpha, double x0) {
  NetworkBuilder<double> b;
  for (int i = 1; i <= 7; ++i) b.add_node("m" + std::to_string(i), std::make_unique<PositionNode>(x0, alpha));
  b.add_entry("in", "m1");
  for (int i = 1; i <= 3; ++i) {
    b.connect("m" + std::to_string(i), 0, "m" + std::to_string(2 * i));
    b.connect("m" + std::to_string(i), 1, "m" + std::to_string(2 * i + 1));
  }
  for (int i = 4; i <= 7; ++i) {
    const std::string m = "m" + std::to_string(i);
    const std::string s = "s" + std::to_string(i);
    b.add_sink(s + "-").add_sink(s + "+");
    b.connect(m, 0, s + "-");
    b.connect(m, 1, s + "+");
  }
  return std::move(b).build();
}

double three_level_value(ScalarNetwork& net, int index) {
  if (index < 1 || index > 7) throw std::out_of_range("three-level machine index must be 1..7");
  return net.node_as<PositionNode>("m" + std::to_string(index)).machine().x();
}

namespace {

void settle(std::array<double, 7>& values, std::size_t index, const std::vector<double>& inputs) {
  if (inputs.empty()) return;
  double sum = 0.0;
  for (double y : inputs) sum += y;
  values[index - 1] = sum / static_cast<double>(inputs.size());
  if (index > 3) return;
  std::vector<double> low, high;
  for (double y : inputs) (y < values[index - 1] ? low : high).push_back(y);
  settle(values, 2 * index, low);
  settle(values, 2 * index + 1, high);
}

}  // namespace

std::array<double, 7> three_level_oracle(const std::array<double, 7>& previous, std::span<const double> set) {
  std::array<double, 7> out = previous;
  settle(out, 1, std::vector<double>(set.begin(), set.end()));
  return out;
}

}  // namespace dlm
