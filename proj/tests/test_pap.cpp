#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "wmc/kernels.hpp"
#include "wmc/pap.hpp"

using namespace wmc;
using doctest::Approx;

namespace {

PapParams linear_params(double k, double time, double kappa = 0.0) {
  PapParams p;
  p.potential = PotentialKind::Linear;
  p.k = k;
  p.time = time;
  p.kappa_bg = kappa;
  return p;
}

PapParams harmonic_params(double omega, double time, double omega_bg = 0.0) {
  PapParams p;
  p.potential = PotentialKind::Harmonic;
  p.omega = omega;
  p.time = time;
  p.omega_bg = omega_bg;
  return p;
}

double integrate(PapFamily f, const PapParams& p, double lo, double hi, int n = 4000) {
  return oracle::simpson([&](double v) { return pap_transformed(v, f, p); }, lo, hi, n);
}

}  // namespace

TEST_CASE("linear PAP moments") {
  const auto dens = [](double v) { return pap_linear(v, 0.5, 1.0); };
  const double mass = oracle::simpson(dens, -2.0, 2.0, 2000);
  const double mean = oracle::simpson([&](double v) { return v * dens(v); }, -2.0, 2.0, 2000);
  const double var = oracle::simpson([&](double v) { return v * v * dens(v); }, -2.0, 2.0, 2000) - mean * mean;
  CHECK(mass == Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(mean) < 1e-14);
  CHECK(var == Approx(1.0 / 48.0).epsilon(1e-10));
  CHECK(pap_linear(0.0, 0.5, 1.0) == Approx(std::sqrt(6.0 / (std::numbers::pi * 0.25))).epsilon(1e-14));
  // Endpoint shift of the mean.
  CHECK(pap_linear(0.5 * 0.5 * 2.0 * (1.0 + 3.0), 0.5, 2.0, 1.0, 1.0, 3.0) ==
        Approx(std::sqrt(6.0 / (std::numbers::pi * 0.25 * 8.0))).epsilon(1e-14));
}

TEST_CASE("linear PAP concentrates as T -> 0") {
  double prev = 0.0;
  for (double t : {1.0, 0.1, 0.01}) {
    const double peak = pap_linear(0.0, 0.5, t);
    CHECK(peak > prev);
    prev = peak;
    CHECK(pap_linear(0.05, 0.5, t) < peak);
  }
  CHECK(pap_linear(0.05, 0.5, 0.01) < 1e-100);
  CHECK_THROWS_AS(pap_linear(0.0, 0.0, 1.0), Error);
}

TEST_CASE("harmonic spectral PAP support and normalisation") {
  CHECK(pap_harmonic_spectral(0.0, 1.0, 5.0) == 0.0);
  CHECK(pap_harmonic_spectral(-1.0, 1.0, 5.0) == 0.0);
  // The density spreads over ~T^2 and peaks near T^2/12.
  for (double t : {5.0, 40.0}) {
    const double area =
        oracle::simpson([&](double v) { return pap_harmonic_spectral(v, 1.0, t, 10); }, 0.0, 1.0 + 2.0 * t * t, 20000);
    CHECK(area == Approx(1.0).epsilon(1e-4));
  }
  for (double t : {1.0, 2.0, 5.0}) {
    const double area =
        oracle::simpson([&](double v) { return pap_harmonic_spectral(v, 1.0, t); }, 0.0, 1.0 + 2.0 * t * t, 20000);
    CHECK(area == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("harmonic spectral PAP first moment is w^2 T^2 / 12") {
  for (double t : {2.0, 6.0}) {
    const double mean =
        oracle::simpson([&](double v) { return v * pap_harmonic_spectral(v, 1.0, t); }, 0.0, 1.0 + 4.0 * t * t, 20000);
    CHECK(mean == Approx(t * t / 12.0).epsilon(1e-6));
  }
}

TEST_CASE("Laplace transform reproduces the kernel ratio") {
  for (double t : {1.0, 2.0, 5.0}) {
    const double lhs =
        oracle::simpson([&](double v) { return std::exp(-v) * pap_harmonic_spectral(v, 1.0, t); }, 0.0, 1.0 + 2.0 * t * t, 20000);
    CHECK(lhs == Approx(std::sqrt(t / std::sinh(t))).epsilon(1e-6));
  }
  const double lhs = oracle::simpson([](double v) { return std::exp(-v) * pap_linear(v, 0.5, 3.0); }, -8.0, 8.0, 4000);
  CHECK(lhs == Approx(std::exp(0.25 * 27.0 / 24.0)).epsilon(1e-10));
}

TEST_CASE("compensation factor") {
  SimConfig c;
  c.time = 40.0;
  const double f = compensation_factor(10.0, PotentialSpec::harmonic(1.0), BackgroundSpec::harmonic({0.75}), c);
  CHECK(f == Approx(std::sqrt(std::sinh(30.0) / 30.0) * std::exp(-5.625)).epsilon(1e-12));
  CHECK(f == Approx(1.52e3).epsilon(5e-3));
  for (double v : {0.0, 3.0, 50.0})
    CHECK(compensation_factor(v, PotentialSpec::harmonic(1.0), BackgroundSpec::harmonic({1e-9}), c) ==
          Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(compensation_factor(1.0, PotentialSpec::poschl_teller(1.0), BackgroundSpec::harmonic({1.0}), c),
                  Error);
}

TEST_CASE("transformed families integrate to one") {
  SUBCASE("linear") {
    const auto p = linear_params(0.5, 15.0, 0.45);
    for (auto f : {PapFamily::Base, PapFamily::Kappa, PapFamily::DoublePrime, PapFamily::Hat})
      CHECK(integrate(f, p, -400.0, 400.0, 20000) == Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("harmonic") {
    const auto p = harmonic_params(1.0, 6.0, 0.75);
    CHECK(integrate(PapFamily::Omega, p, 0.0, 40.0) == Approx(1.0).epsilon(1e-6));
    const auto sp = pap_support(PapFamily::Prime, p);
    CHECK(integrate(PapFamily::Prime, p, sp.lo, sp.lo + 40.0) == Approx(1.0).epsilon(1e-6));
    CHECK(integrate(PapFamily::Tilde, p, 0.0, 40.0) == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("family limits") {
  const auto lp = linear_params(0.5, 4.0, 0.0);
  for (double v : {-1.0, 0.0, 0.7}) CHECK(pap_transformed(v, PapFamily::Kappa, lp) == pap_transformed(v, PapFamily::Base, lp));
  const auto hp = harmonic_params(1.0, 3.0, 1e-5);
  for (double v : {0.2, 0.75, 2.0})
    CHECK(pap_transformed(v, PapFamily::Tilde, hp) == Approx(pap_transformed(v, PapFamily::Base, hp)).epsilon(1e-8));
}

TEST_CASE("Omega family is the base density tilted by e^{-mu v}") {
  const auto p = harmonic_params(1.0, 4.0, 0.75);
  const double r1 = pap_transformed(1.0, PapFamily::Omega, p) / pap_transformed(1.0, PapFamily::Base, p);
  const double r2 = pap_transformed(2.0, PapFamily::Omega, p) / pap_transformed(2.0, PapFamily::Base, p);
  CHECK(std::log(r2 / r1) == Approx(-0.5625).epsilon(1e-10));
}

TEST_CASE("singular and unsupported families") {
  CHECK_THROWS_AS(pap_transformed(1.0, PapFamily::Prime, harmonic_params(1.0, 2.0, 1.0)), Error);
  CHECK_THROWS_AS(pap_transformed(1.0, PapFamily::Hat, linear_params(0.5, 2.0, 0.5)), Error);
  CHECK_THROWS_AS(pap_transformed(1.0, PapFamily::Kappa, harmonic_params(1.0, 2.0, 0.5)), Error);
  auto off = harmonic_params(1.0, 2.0, 0.5);
  off.x = 0.3;
  try {
    pap_transformed(1.0, PapFamily::Omega, off);
    FAIL("expected UnsupportedFamily");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFamily);
  }
  PapParams pt;
  pt.potential = PotentialKind::PoschlTeller;
  CHECK_THROWS_AS(pap_transformed(1.0, PapFamily::Base, pt), Error);
}

TEST_CASE("bundle to family mapping") {
  SimConfig c;
  CHECK(family_for({c, PotentialSpec::harmonic(1), BackgroundSpec::none(), MethodSpec::Plain}) == PapFamily::Base);
  CHECK(family_for({c, PotentialSpec::harmonic(1), BackgroundSpec::harmonic({0.5}), MethodSpec::Plain}) ==
        PapFamily::Omega);
  CHECK(family_for({c, PotentialSpec::linear(1), BackgroundSpec::linear({0.5}), MethodSpec::Compensated}) ==
        PapFamily::DoublePrime);
  CHECK(family_for({c, PotentialSpec::linear(1), BackgroundSpec::linear({0.5}), MethodSpec::Subtracted}) ==
        PapFamily::Hat);
  c.dimension = 2;
  c.x_start = c.x_end = {0.0, 0.0};
  CHECK_THROWS_AS(params_for({c, PotentialSpec::harmonic(1), BackgroundSpec::none(), MethodSpec::Plain}), Error);
}
