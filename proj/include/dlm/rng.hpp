#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dlm {

/// Seeded generator used for every stochastic input in a run.
///
/// Independent streams are derived from one master seed by name, so adding or
/// removing a consumer (e.g. switching a beam splitter to stochastic output)
/// never shifts the draws seen by another consumer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derive(std::uint64_t master_seed, std::string_view stream);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bit() { return (engine_() >> 63) != 0; }

  double normal(double mean, double stddev) {
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dlm
