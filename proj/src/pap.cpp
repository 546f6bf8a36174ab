#include "wmc/pap.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "wmc/csv.hpp"
#include "wmc/kernels.hpp"
#include "wmc/special_functions.hpp"

namespace wmc {

std::string to_string(PapFamily family) {
  switch (family) {
    case PapFamily::Base: return "base";
    case PapFamily::Omega: return "omega";
    case PapFamily::Kappa: return "kappa";
    case PapFamily::Prime: return "prime";
    case PapFamily::DoublePrime: return "double_prime";
    case PapFamily::Tilde: return "tilde";
    case PapFamily::Hat: return "hat";
  }
  return "unknown";
}

double pap_linear(double v, double k, double time, double mass, double x, double y) {
  if (k == 0.0) throw Error(ErrorCode::DegenerateDistribution, "linear PAP with k = 0 is delta(v)");
  const double mean = 0.5 * k * time * (x + y);
  const double var = k * k * time * time * time / (12.0 * mass);
  const double d = v - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

double pap_harmonic_spectral(double v, double omega, double time, int n_truncation) {
  if (!(v > 0.0)) return 0.0;
  const double wt = omega * time;
  const double prefactor = 32.0 * std::sqrt(wt) / std::numbers::pi;
  const bool converge = n_truncation <= 0;
  const int n_max = converge ? 20000 : n_truncation;
  double sum = 0.0;
  for (int n = 0; n <= n_max; n += 2) {
    const double a = (n + 0.5) * wt;
    const double vn = a * a / (8.0 * v);
    if (2.0 * vn > 745.0) {
      if (converge) break;
      continue;  // e^{-2 v_n} underflows; larger n only get smaller
    }
    // n! / (2^{n+1/2} (n/2)!^2), with e^{-v_n} K(v_n) = e^{-2 v_n} Kscaled(v_n).
    const double log_coef = std::lgamma(n + 1.0) - (n + 0.5) * std::numbers::ln2 -
                            2.0 * std::lgamma(0.5 * n + 1.0);
    const double log_mag = log_coef + 1.5 * std::log(vn) - 2.5 * std::log(a) - 2.0 * vn;
    const double bracket = (vn - 0.75) * special::bessel_k_scaled(0.25, vn) +
                           vn * special::bessel_k_scaled(1.25, vn);
    const double term = std::exp(log_mag) * bracket;
    sum += term;
    if (converge && vn > 1.0 && std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return std::max(0.0, prefactor * sum);
}

namespace {

double mu_for(const PotentialSpec& p, const BackgroundSpec& bg) {
  if (p.kind == PotentialKind::Harmonic && bg.kind == BackgroundKind::Harmonic) {
    const double r = background_omega(bg, 0) / p.omega;
    return r * r;
  }
  if (p.kind == PotentialKind::Linear && bg.kind == BackgroundKind::Linear)
    return background_kappa(bg, 0) / p.k;
  throw Error(ErrorCode::UnsupportedPair, "no closed-form compensation factor for (" + to_string(p.kind) +
                                              ", " + to_string(bg.kind) + ")");
}

}  // namespace

double log_compensation_factor(double v, const PotentialSpec& potential, const BackgroundSpec& background,
                               const SimConfig& config) {
  const double mu = mu_for(potential, background);
  return log_kernel_free(config) - log_kernel_background(config, background) - mu * v;
}

double compensation_factor(double v, const PotentialSpec& potential, const BackgroundSpec& background,
                           const SimConfig& config) {
  return std::exp(log_compensation_factor(v, potential, background, config));
}

namespace {

bool harmonic_family(PapFamily f) {
  return f == PapFamily::Omega || f == PapFamily::Prime || f == PapFamily::Tilde;
}
bool linear_family(PapFamily f) {
  return f == PapFamily::Kappa || f == PapFamily::DoublePrime || f == PapFamily::Hat;
}

void check_family(PapFamily family, const PapParams& p) {
  if (p.potential == PotentialKind::Harmonic) {
    if (linear_family(family))
      throw Error(ErrorCode::UnsupportedFamily, to_string(family) + " needs a linear potential");
    if (p.x != 0.0 || p.y != 0.0)
      throw Error(ErrorCode::UnsupportedFamily, "harmonic PAP is only available for x = y = 0");
    if (!(p.omega > 0.0)) throw Error(ErrorCode::UnsupportedFamily, "harmonic PAP needs omega > 0");
    if ((family == PapFamily::Prime || family == PapFamily::Tilde) && p.omega_bg == p.omega)
      throw Error(ErrorCode::DegenerateDistribution, to_string(family) + " is singular at Omega = omega");
  } else if (p.potential == PotentialKind::Linear) {
    if (harmonic_family(family))
      throw Error(ErrorCode::UnsupportedFamily, to_string(family) + " needs a harmonic potential");
    if ((family == PapFamily::DoublePrime || family == PapFamily::Hat) && p.kappa_bg == p.k)
      throw Error(ErrorCode::DegenerateDistribution, to_string(family) + " is singular at kappa = k");
  } else {
    throw Error(ErrorCode::UnsupportedFamily, "no PAP for potential " + to_string(p.potential));
  }
}

double base_density(double v, const PapParams& p) {
  if (p.potential == PotentialKind::Linear) return pap_linear(v, p.k, p.time, p.mass, p.x, p.y);
  return pap_harmonic_spectral(v, p.omega, p.time, p.n_truncation);
}

double mu_of(const PapParams& p) {
  if (p.potential == PotentialKind::Harmonic) {
    const double r = p.omega_bg / p.omega;
    return r * r;
  }
  return p.kappa_bg / p.k;
}

// log(K_0 / K_U) at the family's endpoints.
double log_kernel_ratio(const PapParams& p) {
  if (p.potential == PotentialKind::Harmonic) {
    return log_kernel_free_1d(p.x, p.y, p.time, p.mass) -
           log_kernel_harmonic_1d(p.x, p.y, p.time, p.mass, p.omega_bg);
  }
  return log_kernel_free_1d(p.x, p.y, p.time, p.mass) -
         log_kernel_linear_1d(p.x, p.y, p.time, p.mass, p.kappa_bg);
}

// Density of the raw value in the background (Omega / Kappa families).
double background_density(double v, const PapParams& p) {
  if (p.potential == PotentialKind::Linear) {
    return base_density(v + p.kappa_bg * p.k * p.time * p.time * p.time / (12.0 * p.mass), p);
  }
  const double base = base_density(v, p);
  if (base == 0.0) return 0.0;
  return std::exp(log_kernel_ratio(p) - mu_of(p) * v) * base;
}

}  // namespace

double pap_transformed(double v, PapFamily family, const PapParams& p) {
  check_family(family, p);
  switch (family) {
    case PapFamily::Base:
      return base_density(v, p);
    case PapFamily::Omega:
    case PapFamily::Kappa:
      return background_density(v, p);
    case PapFamily::Prime:
    case PapFamily::DoublePrime: {
      const double s = 1.0 - mu_of(p);
      return background_density((v - log_kernel_ratio(p)) / s, p) / std::fabs(s);
    }
    case PapFamily::Tilde:
    case PapFamily::Hat: {
      const double s = 1.0 - mu_of(p);
      return background_density(v / s, p) / std::fabs(s);
    }
  }
  return 0.0;
}

Support pap_support(PapFamily family, const PapParams& p) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  check_family(family, p);
  if (p.potential == PotentialKind::Linear) return {-inf, inf};
  // Harmonic families live on the image of [0, inf) under v -> s v + c.
  double s = 1.0, c = 0.0;
  if (family == PapFamily::Prime || family == PapFamily::Tilde) s = 1.0 - mu_of(p);
  if (family == PapFamily::Prime) c = log_kernel_ratio(p);
  return s > 0 ? Support{c, inf} : Support{-inf, c};
}

PapFamily family_for(const Bundle& b) {
  const bool linear = b.potential.kind == PotentialKind::Linear;
  if (b.background.kind == BackgroundKind::None) return PapFamily::Base;
  switch (b.method) {
    case MethodSpec::Plain: return linear ? PapFamily::Kappa : PapFamily::Omega;
    case MethodSpec::Compensated: return linear ? PapFamily::DoublePrime : PapFamily::Prime;
    case MethodSpec::Subtracted: return linear ? PapFamily::Hat : PapFamily::Tilde;
  }
  return PapFamily::Base;
}

PapParams params_for(const Bundle& b) {
  if (b.config.dimension != 1)
    throw Error(ErrorCode::UnsupportedFamily, "analytic PAPs are one-dimensional");
  PapParams p;
  p.potential = b.potential.kind;
  p.mass = b.config.mass;
  p.time = b.config.time;
  p.x = b.config.x_start[0];
  p.y = b.config.x_end[0];
  p.omega = b.potential.omega;
  p.k = b.potential.k;
  if (b.background.kind == BackgroundKind::Harmonic) {
    p.omega_bg = background_omega(b.background, 0);
    if (background_center(b.background, 0) != 0.0)
      throw Error(ErrorCode::UnsupportedFamily, "harmonic background must be centred at 0");
  }
  if (b.background.kind == BackgroundKind::Linear) p.kappa_bg = background_kappa(b.background, 0);
  return p;
}

PapCurve tabulate_pap(PapFamily family, const PapParams& params, const std::vector<double>& grid) {
  PapCurve curve;
  curve.family = family;
  curve.params = params;
  curve.grid = grid;
  curve.density.reserve(grid.size());
  for (double v : grid) curve.density.push_back(pap_transformed(v, family, params));
  return curve;
}

void write_pap_csv(std::ostream& out, const PapCurve& curve) {
  out << "v,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    out << csv::number(curve.grid[i]) << ',' << csv::number(curve.density[i]) << '\n';
}

}  // namespace wmc
