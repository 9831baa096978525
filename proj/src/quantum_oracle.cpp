#include "dlm/quantum_oracle.hpp"

#include <cmath>

namespace dlm::oracle {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Amplitudes apply(const Matrix2& m, const Amplitudes& a) {
  return {m[0][0] * a.a0 + m[0][1] * a.a1, m[1][0] * a.a0 + m[1][1] * a.a1};
}

Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs) {
  Matrix2 out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = lhs[r][0] * rhs[0][c] + lhs[r][1] * rhs[1][c];
  return out;
}

Matrix2 hadamard_like() { return {{{1.0, kI}, {kI, 1.0}}}; }

Matrix2 phase(double phi0, double phi1) { return {{{std::polar(1.0, phi0), 0.0}, {0.0, std::polar(1.0, phi1)}}}; }

Intensities malus_intensity(double psi, double phi) {
  const double c = std::cos(psi - phi);
  const double s = std::sin(psi - phi);
  return {c * c, s * s};
}

Amplitudes polarizer_rotation(const Amplitudes& a, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c * a.a0 + s * a.a1, -s * a.a0 + c * a.a1};
}

Amplitudes bs_amplitudes(const Amplitudes& a) {
  const Amplitudes b = apply(hadamard_like(), a);
  const double k = 1.0 / std::sqrt(2.0);
  return {k * b.a0, k * b.a1};
}

Amplitudes mz_amplitudes(const Amplitudes& a, double phi0, double phi1) {
  const Matrix2 h = hadamard_like();
  const Amplitudes b = apply(multiply(h, multiply(phase(phi0, phi1), h)), a);
  return {0.5 * b.a0, 0.5 * b.a1};
}

Amplitudes chained_mz_amplitudes(const Amplitudes& a, double phi0, double phi1, double phi2, double phi3) {
  const Matrix2 h = hadamard_like();
  const Matrix2 m = multiply(h, multiply(phase(phi2, phi3), multiply(h, multiply(phase(phi0, phi1), h))));
  const Amplitudes b = apply(m, a);
  const double k = 1.0 / (2.0 * std::sqrt(2.0));
  return {k * b.a0, k * b.a1};
}

Amplitudes input_amplitudes(double p0, double psi0, double psi1) {
  return {std::polar(std::sqrt(p0), psi0), std::polar(std::sqrt(1.0 - p0), psi1)};
}

}  // namespace dlm::oracle
