#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "wmc/analysis.hpp"
#include "wmc/kernels.hpp"

using namespace wmc;
using doctest::Approx;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> normals(std::uint64_t seed, std::size_t n, double shift = 0.0) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> d(shift, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = d(eng);
  return out;
}

}  // namespace

TEST_CASE("histogram") {
  const std::vector<double> constant(50, 2.5);
  const auto h = histogram(constant, 10);
  int occupied = 0;
  for (double d : h.density)
    if (d > 0) {
      ++occupied;
      CHECK(d == Approx(1.0 / (h.grid[1] - h.grid[0])));
    }
  CHECK(occupied == 1);

  const auto xs = normals(1, 10000);
  const auto g = histogram(xs, 37);
  const double width = g.grid[1] - g.grid[0];
  CHECK(std::accumulate(g.density.begin(), g.density.end(), 0.0) * width == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(histogram(std::vector<double>{}, 10), Error);
  CHECK_THROWS_AS(histogram(xs, 1), Error);
}

TEST_CASE("KS critical constant") { CHECK(ks_critical_constant(0.01) == Approx(1.6276).epsilon(1e-4)); }

TEST_CASE("KS accepts the null and rejects a shift") {
  const auto xs = normals(2, 100000);
  const auto r = ks_test(xs, normal_cdf);
  CHECK(r.pass);
  CHECK(r.value < r.threshold);
  CHECK(r.sample_size == 100000);
  const auto shifted = normals(3, 100000, 5.0);
  CHECK_FALSE(ks_test(shifted, normal_cdf).pass);
}

TEST_CASE("KS rejection rate under the null is calibrated") {
  int rejections = 0;
  for (std::uint64_t s = 0; s < 200; ++s)
    if (!ks_test(normals(1000 + s, 2000), normal_cdf).pass) ++rejections;
  CHECK(rejections <= 10);
}

TEST_CASE("tabulated CDF of a Gaussian family") {
  PapParams p;
  p.potential = PotentialKind::Linear;
  p.k = 0.5;
  p.time = 3.0;
  const double sd = std::sqrt(0.25 * 27.0 / 12.0);
  const std::vector<double> bracket{-5.0 * sd, 5.0 * sd};
  const auto cdf = pap_cdf_for_samples(PapFamily::Base, p, bracket);
  for (double v : {-2.0, -0.5, 0.0, 0.3, 1.9}) CHECK(std::fabs(cdf(v) - normal_cdf(v / sd)) < 1e-5);
  CHECK(cdf.total_mass() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("covariance oracle") {
  const auto bridge = covariance_oracle(0.0, 0.0, 16);
  for (std::size_t i = 1; i < 16; ++i)
    for (std::size_t j = i; j < 16; ++j) {
      const double ui = i / 16.0, uj = j / 16.0;
      CHECK(bridge.cov(i, j) == Approx(ui * (1.0 - uj)).epsilon(1e-12));
      CHECK(bridge.cov(j, i) == Approx(ui * (1.0 - uj)).epsilon(1e-12));
    }
  for (double m : bridge.mean) CHECK(m == 0.0);
  const auto confined = covariance_oracle(0.04, 0.0, 16);
  CHECK(confined.cov(8, 8) < bridge.cov(8, 8));
  const auto scaled = covariance_oracle(0.0, 0.0, 16, 2.0, 6.0);
  CHECK(scaled.cov(5, 9) == Approx(3.0 * bridge.cov(5, 9)));
  // Uniform drift: mean q_i = -beta N u_i (1 - u_i) N / 2 for alpha = 0.
  const auto drift = covariance_oracle(0.0, 0.02, 16);
  for (std::size_t i = 1; i < 16; ++i) CHECK(drift.mean_at(i) == Approx(-0.02 * i * (16.0 - i) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(covariance_oracle(0.0, 0.0, 300), Error);
  CHECK_THROWS_AS(covariance_oracle(-5.0, 0.0, 16), Error);
}

namespace {

SweepTable exact_harmonic_table(double scale) {
  SweepTable t;
  SimConfig c;
  for (double time = 5.0; time <= 20.0; time += 1.0) {
    c.time = time;
    SweepRow row;
    row.time = time;
    row.log_estimate = log_kernel_harmonic(c, 1.0) + std::log(scale);
    row.log_std_error = 0.01;
    row.estimate = std::exp(*row.log_estimate);
    row.std_error = 0.01 * row.estimate;
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace

TEST_CASE("ground-state fit") {
  const auto fit = fit_ground_state(exact_harmonic_table(1.0), 5.0, 20.0);
  CHECK(std::fabs(fit.e0 - 0.5) < 1e-3);
  CHECK(fit.n_rows_used == 16);
  const auto scaled = fit_ground_state(exact_harmonic_table(37.0), 5.0, 20.0);
  CHECK(scaled.e0 == Approx(fit.e0).epsilon(1e-12));
  CHECK(scaled.std_error == Approx(fit.std_error).epsilon(1e-12));
  CHECK_THROWS_AS(fit_ground_state(exact_harmonic_table(1.0), 5.0, 6.5), Error);
  auto missing = exact_harmonic_table(1.0);
  for (auto& r : missing.rows) r.log_estimate.reset();
  CHECK_THROWS_AS(fit_ground_state(missing, 5.0, 20.0), Error);
}

TEST_CASE("jackknife") {
  CHECK(jackknife_error(std::vector<double>(20, 3.0)) == 0.0);
  CHECK(jackknife_error(std::vector<double>{0.0, 2.0}) == Approx(1.0).epsilon(1e-15));
  const auto xs = normals(9, 10000);
  CHECK(jackknife_error(xs) == Approx(1.0 / 100.0).epsilon(0.1));
}

TEST_CASE("harmonic-background tilt has slope -Omega^2 / omega^2") {
  SimConfig c;
  c.n_points = 200;
  c.n_paths = 50000;
  c.time = 6.0;
  const Bundle b{c, PotentialSpec::harmonic(1.0), BackgroundSpec::harmonic({0.75}), MethodSpec::Plain};
  const auto set = sample_wilson_lines(b, WilsonKind::Raw);
  const auto fit = log_ratio_slope(set.values, [](double v) { return pap_harmonic_spectral(v, 1.0, 6.0); }, 40);
  CHECK(std::fabs(fit.slope + 0.5625) < 3.0 * fit.std_error);
}

TEST_CASE("JSON records are single lines") {
  GofReport r;
  r.value = 0.001;
  r.threshold = 0.005;
  r.pass = true;
  const auto s = to_json_line(r);
  CHECK(s.find('\n') == std::string::npos);
  CHECK(s.find("\"pass\":true") != std::string::npos);
  EnergyFit f;
  f.e0 = 0.5;
  CHECK(to_json_line(f).find("\"e0\":0.5") != std::string::npos);
}
