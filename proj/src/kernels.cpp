#include "wmc/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wmc/special_functions.hpp"

namespace wmc {

double log_kernel_free_1d(double x, double y, double time, double mass) {
  const double d = y - x;
  return 0.5 * std::log(mass / (2.0 * std::numbers::pi * time)) - mass * d * d / (2.0 * time);
}

double log_kernel_harmonic_1d(double x, double y, double time, double mass, double omega) {
  const double z = omega * time;
  if (z < 1e-8) return log_kernel_free_1d(x, y, time, mass);
  const double log_sh = special::log_sinh(z);
  // (x^2 + y^2) coth z - 2xy / sinh z, written to survive large z.
  const double coth = 1.0 / std::tanh(z);
  const double inv_sh = std::exp(-log_sh);
  const double quad = (x * x + y * y) * coth - 2.0 * x * y * inv_sh;
  return 0.5 * (std::log(mass * omega / (2.0 * std::numbers::pi)) - log_sh) - 0.5 * mass * omega * quad;
}

double log_kernel_linear_1d(double x, double y, double time, double mass, double slope) {
  return log_kernel_free_1d(x, y, time, mass) - 0.5 * slope * time * (x + y) +
         slope * slope * time * time * time / (24.0 * mass);
}

namespace {

template <typename F>
double sum_axes(const SimConfig& c, F&& f) {
  double s = 0.0;
  for (int j = 0; j < c.dimension; ++j) s += f(j, c.x_start[j], c.x_end[j]);
  return s;
}

}  // namespace

double log_kernel_free(const SimConfig& c) {
  return sum_axes(c, [&](int, double x, double y) { return log_kernel_free_1d(x, y, c.time, c.mass); });
}

double kernel_free(const SimConfig& c) { return std::exp(log_kernel_free(c)); }

double log_kernel_harmonic(const SimConfig& c, double omega) {
  return sum_axes(c, [&](int, double x, double y) {
    return log_kernel_harmonic_1d(x, y, c.time, c.mass, omega);
  });
}

double kernel_harmonic(const SimConfig& c, double omega) { return std::exp(log_kernel_harmonic(c, omega)); }

double log_kernel_linear(const SimConfig& c, double slope) {
  return sum_axes(c, [&](int, double x, double y) {
    return log_kernel_linear_1d(x, y, c.time, c.mass, slope);
  });
}

double kernel_linear(const SimConfig& c, double slope) { return std::exp(log_kernel_linear(c, slope)); }

double log_kernel_background(const SimConfig& c, const BackgroundSpec& bg) {
  switch (bg.kind) {
    case BackgroundKind::None:
      return log_kernel_free(c);
    case BackgroundKind::Harmonic:
      return sum_axes(c, [&](int j, double x, double y) {
        const double centre = background_center(bg, j);
        return log_kernel_harmonic_1d(x - centre, y - centre, c.time, c.mass, background_omega(bg, j));
      });
    case BackgroundKind::Linear:
      return sum_axes(c, [&](int j, double x, double y) {
        return log_kernel_linear_1d(x, y, c.time, c.mass, background_kappa(bg, j));
      });
  }
  return log_kernel_free(c);
}

double log_kernel_exact(const SimConfig& c, const PotentialSpec& p) {
  switch (p.kind) {
    case PotentialKind::Free: return log_kernel_free(c);
    case PotentialKind::Harmonic: return log_kernel_harmonic(c, p.omega);
    case PotentialKind::Linear: return log_kernel_linear(c, p.k);
    default:
      throw Error(ErrorCode::UnsupportedPair, "no closed-form kernel for potential " + to_string(p.kind));
  }
}

EnergyLevels absolute_value_levels(double g, double mass, int n_max) {
  if (!(g > 0.0) || !(mass > 0.0) || n_max < 0)
    throw Error(ErrorCode::InvalidParameter, "absolute_value_levels needs g > 0, m > 0, n_max >= 0");
  const auto n_even = static_cast<std::size_t>(n_max / 2 + 1);
  const auto n_odd = static_cast<std::size_t>((n_max + 1) / 2);
  const auto prime_zeros = special::airy_ai_prime_zeros(n_even);
  const auto zeros = special::airy_ai_zeros(n_odd);
  const double scale = std::cbrt(g * g / (2.0 * mass));
  EnergyLevels levels;
  levels.potential = PotentialKind::AbsoluteValue;
  for (int n = 0; n <= n_max; ++n) {
    const double sigma = n % 2 == 0 ? prime_zeros[static_cast<std::size_t>(n / 2)]
                                    : zeros[static_cast<std::size_t>((n - 1) / 2)];
    levels.values.push_back(-scale * sigma);
  }
  return levels;
}

double poschl_teller_ground_energy(double alpha, int lambda, double mass) {
  if (lambda != 1)
    throw Error(ErrorCode::UnsupportedLambda, "only lambda = 1 is supported, got " + std::to_string(lambda));
  return -alpha * alpha / (2.0 * mass);
}

}  // namespace wmc
