#include <cmath>

#include "doctest.h"
#include "dlm/quantum_oracle.hpp"
#include "dlm/rng.hpp"
#include "dlm/vec.hpp"

using namespace dlm;
using namespace dlm::oracle;

namespace {

constexpr Complex kI{0.0, 1.0};

/// Interferometer output 0 written out element by element.
Complex mz_b0(Complex a0, Complex a1, double phi0, double phi1) {
  const Complex e0 = std::polar(1.0, phi0), e1 = std::polar(1.0, phi1);
  return 0.5 * ((e0 - e1) * a0 + kI * (e0 + e1) * a1);
}

Amplitudes random_amplitudes(Rng& rng) {
  const double p0 = rng.uniform();
  return input_amplitudes(p0, rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi));
}

}  // namespace

TEST_CASE("Malus law") {
  const auto a = malus_intensity(deg_to_rad(60.0), 0.0);
  CHECK(a.i0 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.i1 == doctest::Approx(0.75).epsilon(1e-14));
  const auto b = malus_intensity(deg_to_rad(25.0), deg_to_rad(85.0));
  CHECK(b.i0 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(b.i0 + b.i1 == doctest::Approx(1.0));
}

TEST_CASE("polarizer rotation") {
  const double psi = 0.7, phi = 0.2;
  const auto b = polarizer_rotation({std::cos(psi), std::sin(psi)}, phi);
  CHECK(b.a0.real() == doctest::Approx(std::cos(psi - phi)));
  CHECK(b.a1.real() == doctest::Approx(std::sin(psi - phi)));
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const auto a = random_amplitudes(rng);
    REQUIRE(polarizer_rotation(a, rng.uniform(0.0, 6.0)).total() == doctest::Approx(a.total()).epsilon(1e-13));
  }
}

TEST_CASE("beam splitter") {
  const auto b = bs_amplitudes({1.0, 0.0});
  const double k = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(b.a0 - Complex(k, 0.0)) < 1e-15);
  CHECK(std::abs(b.a1 - Complex(0.0, k)) < 1e-15);
  // Two splitters in a row send each input to the other port.
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_amplitudes(rng);
    const auto twice = bs_amplitudes(bs_amplitudes(a));
    REQUIRE(twice.p0() == doctest::Approx(a.p1()).epsilon(1e-13));
    REQUIRE(bs_amplitudes(a).total() == doctest::Approx(1.0).epsilon(1e-13));
  }
  // Phase-dependent split: |b0|^2 = (1 + 2 sqrt(p0 p1) sin(psi0 - psi1)) / 2.
  const double p0 = 0.3, psi0 = 0.4, psi1 = 2.1;
  const auto c = bs_amplitudes(input_amplitudes(p0, psi0, psi1));
  CHECK(c.p0() == doctest::Approx((1.0 + 2.0 * std::sqrt(p0 * (1 - p0)) * std::sin(psi0 - psi1)) / 2.0));
}

TEST_CASE("input amplitudes use square-root weights") {
  const auto a = input_amplitudes(0.25, 0.0, kPi / 2.0);
  CHECK(a.p0() == doctest::Approx(0.25));
  CHECK(a.p1() == doctest::Approx(0.75));
  CHECK(std::abs(a.a1 - Complex(0.0, std::sqrt(0.75))) < 1e-15);
}

TEST_CASE("Mach-Zehnder") {
  const auto same = mz_amplitudes({1.0, 0.0}, 0.3, 0.3);
  CHECK(same.p0() == doctest::Approx(0.0));
  CHECK(same.p1() == doctest::Approx(1.0));
  const auto opposite = mz_amplitudes({1.0, 0.0}, kPi, 0.0);
  CHECK(opposite.p0() == doctest::Approx(1.0));

  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_amplitudes(rng);
    const double phi0 = rng.uniform(0.0, 2.0 * kPi), phi1 = rng.uniform(0.0, 2.0 * kPi);
    const auto b = mz_amplitudes(a, phi0, phi1);
    REQUIRE(std::abs(b.a0 - mz_b0(a.a0, a.a1, phi0, phi1)) < 1e-13);
    REQUIRE(b.total() == doctest::Approx(1.0).epsilon(1e-13));
    // Single input port: fringe sin^2((phi0 - phi1) / 2).
    const double s = std::sin((phi0 - phi1) / 2.0);
    REQUIRE(mz_amplitudes({1.0, 0.0}, phi0, phi1).p0() == doctest::Approx(s * s).epsilon(1e-13));
  }
}

TEST_CASE("chained interferometers") {
  const auto zero = chained_mz_amplitudes({1.0, 0.0}, 0.0, 0.0, 0.0, 0.0);
  CHECK(zero.p0() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(zero.a0 - Complex(-1.0 / std::sqrt(2.0), 0.0)) < 1e-14);

  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_amplitudes(rng);
    double phi[4];
    for (auto& p : phi) p = rng.uniform(0.0, 2.0 * kPi);
    const auto b = chained_mz_amplitudes(a, phi[0], phi[1], phi[2], phi[3]);
    REQUIRE(b.total() == doctest::Approx(1.0).epsilon(1e-13));

    // Stage by stage: splitter, phases, splitter, phases, splitter.
    auto s = bs_amplitudes(a);
    s = {std::polar(1.0, phi[0]) * s.a0, std::polar(1.0, phi[1]) * s.a1};
    s = bs_amplitudes(s);
    s = {std::polar(1.0, phi[2]) * s.a0, std::polar(1.0, phi[3]) * s.a1};
    s = bs_amplitudes(s);
    REQUIRE(std::abs(b.a0 - s.a0) < 1e-13);
    REQUIRE(std::abs(b.a1 - s.a1) < 1e-13);

    // Equal outer phases turn the last two splitters into a port swap, so
    // only the first splitter shapes the output.
    const auto eq = chained_mz_amplitudes(a, phi[0], phi[1], phi[2], phi[2]);
    REQUIRE(eq.p0() == doctest::Approx(bs_amplitudes(a).p1()).epsilon(1e-12));
  }
}

TEST_CASE("matrix helpers") {
  const auto h = hadamard_like();
  const auto hh = multiply(h, h);
  CHECK(std::abs(hh[0][0]) < 1e-15);
  CHECK(std::abs(hh[0][1] - 2.0 * kI) < 1e-15);
  const auto d = apply(phase(kPi / 2.0, 0.0), {1.0, 1.0});
  CHECK(std::abs(d.a0 - kI) < 1e-15);
  CHECK(std::abs(d.a1 - Complex(1.0, 0.0)) < 1e-15);
}
