#include "dlm/event_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dlm {

Message::Message(const Vec2& v) {
  const double n = norm(v);
  if (!all_finite(v) || !(n > 0.0)) throw std::invalid_argument("Message: payload must be a finite non-zero vector");
  payload_ = {v[0] / n, v[1] / n};
}

Message Message::from_angle(double radians) { return Message({std::cos(radians), std::sin(radians)}); }

double Message::angle() const { return std::atan2(payload_[1], payload_[0]); }

std::uint64_t TallyCounters::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

std::uint64_t TallyCounters::total_discarded() const {
  return std::accumulate(discards.begin(), discards.end(), std::uint64_t{0});
}

std::size_t TallyCounters::sink_index(const std::string& name) const {
  auto it = std::find(sink_names.begin(), sink_names.end(), name);
  if (it == sink_names.end()) throw NetworkError("unknown sink '" + name + "'");
  return static_cast<std::size_t>(it - sink_names.begin());
}

std::uint64_t TallyCounters::tap(const std::string& name) const {
  auto it = std::find(tap_names.begin(), tap_names.end(), name);
  if (it == tap_names.end()) throw NetworkError("unknown tap '" + name + "'");
  return tap_counts[static_cast<std::size_t>(it - tap_names.begin())];
}

double TallyCounters::fraction(const std::string& sink) const {
  const std::uint64_t t = total();
  return t == 0 ? 0.0 : static_cast<double>(count(sink)) / static_cast<double>(t);
}

void TallyCounters::reset() {
  std::fill(counts.begin(), counts.end(), 0);
  std::fill(discards.begin(), discards.end(), 0);
  std::fill(tap_counts.begin(), tap_counts.end(), 0);
}

}  // namespace dlm
