#include <cmath>
#include <set>

#include "doctest.h"
#include "wmc/rng.hpp"

using namespace wmc;

TEST_CASE("variance-1/2 stream has the right first two moments") {
  const std::size_t n = 1'000'000;
  const auto xs = gaussian_sequence({7, 0, 0}, n, 0.5);
  long double s = 0, ss = 0, s4 = 0;
  for (double x : xs) {
    s += x;
    ss += x * x;
  }
  const double mean = static_cast<double>(s / n);
  const double var = static_cast<double>(ss / n) - mean * mean;
  for (double x : xs) s4 += (x - mean) * (x - mean) * (x - mean) * (x - mean);
  const double m4 = static_cast<double>(s4 / n);
  CHECK(std::fabs(mean) < 4.0 * std::sqrt(0.5 / n));
  // Standard error of the sample variance: sqrt((m4 - var^2) / n).
  CHECK(std::fabs(var - 0.5) < 4.0 * std::sqrt((m4 - var * var) / n));
}

TEST_CASE("same key gives bit-identical sequences") {
  const StreamKey key{123, 45, 2};
  CHECK(gaussian_sequence(key, 1001, 0.5) == gaussian_sequence(key, 1001, 0.5));
}

TEST_CASE("neighbouring keys give distinct streams") {
  std::set<double> firsts;
  for (std::uint64_t t = 0; t < 100; ++t)
    for (std::uint32_t a = 0; a < 3; ++a) firsts.insert(gaussian_sequence({1, t, a}, 1, 1.0)[0]);
  CHECK(firsts.size() == 300);
  CHECK(gaussian_sequence({1, 0, 0}, 8, 1.0) != gaussian_sequence({2, 0, 0}, 8, 1.0));
}

TEST_CASE("lag-one correlation is negligible") {
  const std::size_t n = 200'000;
  const auto xs = gaussian_sequence({99, 3, 0}, n, 1.0);
  long double c = 0;
  for (std::size_t i = 1; i < n; ++i) c += xs[i] * xs[i - 1];
  CHECK(std::fabs(static_cast<double>(c / (n - 1))) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("derive_seed separates rows") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  static_assert(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("non-positive variance is rejected") {
  CHECK_THROWS(gaussian_sequence({1, 0, 0}, 4, 0.0));
}
