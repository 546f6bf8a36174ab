#include "wmc/potentials.hpp"

#include <cmath>

namespace wmc {

double sech_squared(double z) {
  // 4 e^{-2|z|} / (1 + e^{-2|z|})^2, exact 0 once e^{-2|z|} underflows.
  const double e = std::exp(-2.0 * std::fabs(z));
  const double d = 1.0 + e;
  return 4.0 * e / (d * d);
}

namespace {

double norm_squared(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double norm(std::span<const double> x) {
  return x.size() == 1 ? std::fabs(x[0]) : std::sqrt(norm_squared(x));
}

}  // namespace

double evaluate(const PotentialSpec& p, std::span<const double> x, double mass) {
  switch (p.kind) {
    case PotentialKind::Free:
      return 0.0;
    case PotentialKind::Harmonic: {
      double s = 0.0;
      for (double v : x) s += 0.5 * mass * p.omega * p.omega * (v * v);
      return s;
    }
    case PotentialKind::Linear: {
      double s = 0.0;
      for (double v : x) s += p.k * v;
      return s;
    }
    case PotentialKind::PoschlTeller: {
      const double depth = p.alpha * p.alpha / (2.0 * mass) * p.lambda * (p.lambda + 1.0);
      return -depth * sech_squared(p.alpha * norm(x));
    }
    case PotentialKind::AbsoluteValue:
      return p.g * norm(x);
  }
  return 0.0;
}

double evaluate_background(const BackgroundSpec& bg, std::span<const double> x, double mass) {
  switch (bg.kind) {
    case BackgroundKind::None:
      return 0.0;
    case BackgroundKind::Harmonic: {
      // Same operation order as the harmonic potential, so V - U is exactly
      // zero when the two coincide.
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const int axis = static_cast<int>(j);
        const double w = background_omega(bg, axis);
        const double d = x[j] - background_center(bg, axis);
        s += 0.5 * mass * w * w * (d * d);
      }
      return s;
    }
    case BackgroundKind::Linear: {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += background_kappa(bg, static_cast<int>(j)) * x[j];
      return s;
    }
  }
  return 0.0;
}

}  // namespace wmc
