#pragma once

// Learning machines whose internal state is a unit vector on the K-sphere.
//
// Each event offers 2K candidate updates (j, s): component j becomes
// s * sqrt(1 + alpha^2 (x_j^2 - 1)) and every other component is scaled by
// alpha. All candidates keep |x| = 1. The machine applies the candidate with
// the smallest cost C = -x'.y and reports which one it chose.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dlm/rng.hpp"
#include "dlm/vec.hpp"

namespace dlm {

inline constexpr double kDefaultAlpha = 0.99;

Vec2 angle_to_vector(double radians);
/// Throws std::invalid_argument for a zero or non-finite vector.
double vector_to_angle(const Vec2& y);

/// j is zero-based. Ties between candidate costs go to the smaller j, then s = +1.
struct RuleChoice {
  std::size_t j = 0;
  int s = +1;

  friend bool operator==(const RuleChoice&, const RuleChoice&) = default;
};

/// Candidate state for rule `choice`, before any renormalization.
template <std::size_t K>
VecK<K> apply_rule(const VecK<K>& x, RuleChoice choice, double alpha) {
  VecK<K> out;
  for (std::size_t i = 0; i < K; ++i) out[i] = alpha * x[i];
  // 1 + alpha^2 (x_j^2 - 1) >= 0 analytically; clamp rounding noise.
  const double arg = std::max(0.0, 1.0 + alpha * alpha * (x[choice.j] * x[choice.j] - 1.0));
  out[choice.j] = choice.s * std::sqrt(arg);
  return out;
}

template <std::size_t K>
struct HypersphereStep {
  RuleChoice choice;
  /// Costs of all candidates, indexed 2*j + (s > 0 ? 0 : 1).
  std::array<double, 2 * K> costs;
  /// Norm of the applied candidate before renormalization.
  double raw_norm;
};

template <std::size_t K>
class HypersphereDlm {
 public:
  HypersphereDlm(const VecK<K>& x0, double alpha) : x_(x0), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const double n = norm(x0);
    if (!all_finite(x0) || std::abs(n - 1.0) > 1e-9)
      throw std::invalid_argument("HypersphereDlm: initial state must be a unit vector");
    x_ = scaled(x_, 1.0 / n);
  }

  /// Initial direction uniform on the sphere.
  static HypersphereDlm random(double alpha, Rng& rng) {
    VecK<K> v;
    double n = 0.0;
    do {
      for (auto& c : v) c = rng.normal(0.0, 1.0);
      n = norm(v);
    } while (n < 1e-12);
    return HypersphereDlm(scaled(v, 1.0 / n), alpha);
  }

  HypersphereStep<K> step(const VecK<K>& y) {
    const double ny = norm(y);
    if (!all_finite(y) || !(ny > 0.0)) throw std::invalid_argument("HypersphereDlm: input must be non-zero and finite");

    HypersphereStep<K> out{};
    double best = std::numeric_limits<double>::infinity();
    VecK<K> best_state{};
    for (std::size_t j = 0; j < K; ++j) {
      for (int s : {+1, -1}) {
        const VecK<K> cand = apply_rule(x_, RuleChoice{j, s}, alpha_);
        const double c = -dot(cand, y);
        out.costs[2 * j + (s > 0 ? 0 : 1)] = c;
        if (c < best) {
          best = c;
          out.choice = RuleChoice{j, s};
          best_state = cand;
        }
      }
    }
    out.raw_norm = norm(best_state);
    x_ = scaled(best_state, 1.0 / out.raw_norm);
    return out;
  }

  const VecK<K>& state() const { return x_; }
  double alpha() const { return alpha_; }

 private:
  VecK<K> x_;
  double alpha_;
};

/// K = 2 machine. theta = 1 when the first component took the square-root
/// update (the internal vector's cosine grew), theta = 0 otherwise.
class CircleDlm {
 public:
  CircleDlm(const Vec2& x0, double alpha) : inner_(x0, alpha) {}
  static CircleDlm random(double alpha, Rng& rng) { return CircleDlm(HypersphereDlm<2>::random(alpha, rng)); }

  struct Step {
    int theta;
    int s;
    HypersphereStep<2> detail;
  };

  Step step(const Vec2& y) {
    const auto d = inner_.step(y);
    return {d.choice.j == 0 ? 1 : 0, d.choice.s, d};
  }

  const Vec2& state() const { return inner_.state(); }
  double angle() const { return vector_to_angle(inner_.state()); }
  double alpha() const { return inner_.alpha(); }
  const HypersphereDlm<2>& machine() const { return inner_; }

 private:
  explicit CircleDlm(HypersphereDlm<2> inner) : inner_(inner) {}
  HypersphereDlm<2> inner_;
};

/// K = 4 machine with two 2-vector input channels. The missing half of the
/// input is borrowed from the current internal state before the
/// hypersphere step.
class FrontEndDlm {
 public:
  FrontEndDlm(const Vec4& x0, double alpha) : inner_(x0, alpha) {}
  static FrontEndDlm random(double alpha, Rng& rng) { return FrontEndDlm(HypersphereDlm<4>::random(alpha, rng)); }

  /// Input vector the hypersphere step sees for (channel, y).
  Vec4 completed_input(std::size_t channel, const Vec2& y) const;

  HypersphereStep<4> step(std::size_t channel, const Vec2& y) { return inner_.step(completed_input(channel, y)); }

  const Vec4& state() const { return inner_.state(); }
  double alpha() const { return inner_.alpha(); }
  const HypersphereDlm<4>& machine() const { return inner_; }

 private:
  explicit FrontEndDlm(HypersphereDlm<4> inner) : inner_(inner) {}
  HypersphereDlm<4> inner_;
};

/// Squared first component under x1'^2 = alpha^2 x1^2 + (1 - alpha^2) theta,
/// i.e. the circle machine driven by an externally supplied theta sequence.
/// Element k of the result is x1^2 after k updates (element 0 is the start).
std::vector<double> iterate_random_theta(const Vec2& x0, const std::vector<int>& thetas, double alpha);

}  // namespace dlm
