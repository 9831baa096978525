#pragma once

// One-dimensional learning machines: the position learner (an exponential
// moving average that routes by sign) and the interval learner whose state
// is confined to [-1, 1].

#include <array>
#include <memory>
#include <span>
#include <string>

#include "dlm/event_core.hpp"

namespace dlm {

/// Learns the running mean of its inputs. Emits delta = +1 when x <= y.
class PositionDlm {
 public:
  PositionDlm(double x0, double alpha);

  struct Step {
    int delta;
  };

  /// Throws std::invalid_argument if |y| > 1.
  Step step(double y);

  double x() const { return x_; }
  double alpha() const { return alpha_; }

 private:
  double x_;
  double alpha_;
};

/// x0 * alpha^n + (1 - alpha) * sum_i alpha^(n-1-i) * ys[i]
double closed_form_position(double x0, std::span<const double> ys, double alpha);

/// State moves by (1-alpha)(1-x) up or (1-alpha)(1+x) down; the choice
/// minimizes |y - alpha x - (1-alpha) delta| with ties going to +1.
class IntervalDlm {
 public:
  IntervalDlm(double x0, double alpha);

  struct Step {
    int delta;
  };

  /// Throws std::invalid_argument unless |y| < 1.
  Step step(double y);

  double x() const { return x_; }
  double alpha() const { return alpha_; }

 private:
  double x_;
  double alpha_;
};

/// Network node wrapping a PositionDlm. Output 0 is the -1 channel, output 1
/// the +1 channel; the forwarded message is the input value.
class PositionNode final : public Node<double> {
 public:
  PositionNode(double x0, double alpha) : dlm_(x0, alpha) {}

  std::size_t input_count() const override { return 1; }
  std::size_t output_count() const override { return 2; }
  Emission<double> receive(std::size_t input, const double& y) override;
  std::unique_ptr<Node<double>> clone() const override { return std::make_unique<PositionNode>(*this); }
  std::string kind() const override { return "position-dlm"; }

  const PositionDlm& machine() const { return dlm_; }

 private:
  PositionDlm dlm_;
};

using ScalarNetwork = Network<double>;

/// Binary tree of seven position learners: node "m1" at the root, "m2"/"m3"
/// its -1/+1 children, "m4".."m7" the leaves. Leaf outputs go to sinks
/// "s4-" "s4+" ... "s7+". Single entry "in".
ScalarNetwork build_three_level_classifier(double alpha, double x0 = 0.0);

/// Learned value of machine `index` (1..7) in a three-level network.
double three_level_value(ScalarNetwork& net, int index);

/// Values the seven machines settle on when fed `set` with equal weights,
/// starting from `previous`. A machine that receives nothing keeps its value.
/// Inputs at or above a machine's value go to its +1 child.
std::array<double, 7> three_level_oracle(const std::array<double, 7>& previous, std::span<const double> set);

}  // namespace dlm
