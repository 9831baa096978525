#pragma once

// Reference predictions from two-mode amplitude propagation. These are the
// values every optics scenario is compared against.

#include <array>
#include <complex>

namespace dlm::oracle {

using Complex = std::complex<double>;

struct Amplitudes {
  Complex a0;
  Complex a1;

  double p0() const { return std::norm(a0); }
  double p1() const { return std::norm(a1); }
  double total() const { return p0() + p1(); }
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Amplitudes apply(const Matrix2& m, const Amplitudes& a);
Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs);

/// [[1, i], [i, 1]] without normalization.
Matrix2 hadamard_like();
Matrix2 phase(double phi0, double phi1);

struct Intensities {
  double i0;
  double i1;
};

/// (cos^2(psi - phi), sin^2(psi - phi)).
Intensities malus_intensity(double psi, double phi);

/// b = [[cos phi, sin phi], [-sin phi, cos phi]] a.
Amplitudes polarizer_rotation(const Amplitudes& a, double phi);

/// b = (1/sqrt 2) [[1, i], [i, 1]] a.
Amplitudes bs_amplitudes(const Amplitudes& a);

/// b = (1/2) H D(phi0, phi1) H a. Output 0 corresponds to detector N2.
Amplitudes mz_amplitudes(const Amplitudes& a, double phi0, double phi1);

/// b = (1/(2 sqrt 2)) H D(phi2, phi3) H D(phi0, phi1) H a. Output 0 is N4.
Amplitudes chained_mz_amplitudes(const Amplitudes& a, double phi0, double phi1, double phi2, double phi3);

/// Input amplitudes for a two-port device fed on port 0 with probability p0
/// and phase psi0, port 1 otherwise with phase psi1.
Amplitudes input_amplitudes(double p0, double psi0, double psi1);

}  // namespace dlm::oracle
