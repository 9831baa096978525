#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace dlm {

template <std::size_t K>
using VecK = std::array<double, K>;

using Vec2 = VecK<2>;
using Vec4 = VecK<4>;

template <std::size_t K>
constexpr double dot(const VecK<K>& a, const VecK<K>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < K; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t K>
double norm(const VecK<K>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t K>
VecK<K> scaled(VecK<K> a, double c) {
  for (auto& v : a) v *= c;
  return a;
}

template <std::size_t K>
VecK<K> operator+(VecK<K> a, const VecK<K>& b) {
  for (std::size_t i = 0; i < K; ++i) a[i] += b[i];
  return a;
}

template <std::size_t K>
VecK<K> operator-(VecK<K> a, const VecK<K>& b) {
  for (std::size_t i = 0; i < K; ++i) a[i] -= b[i];
  return a;
}

template <std::size_t K>
bool all_finite(const VecK<K>& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace dlm
