#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wmc/model.hpp"

namespace wmc {

// Path-averaged-potential (PAP) densities: distributions of the Wilson-line
// value v over the trajectory ensemble.
//
// Families, with mu = Omega^2/w^2 (harmonic) or kappa/k (linear) and
// c = log(K_0 / K_U):
//   Base         p(v): Gaussian for V = kx, spectral series for V = m w^2 x^2/2
//   Omega        p_Omega(v) = e^{c - mu v} p(v)          raw v, harmonic background
//   Kappa        p_kappa(v) = p(v + kappa k T^3 / 12m)   raw v, linear background
//   Prime        p'(v)  = p_Omega((v - c)/(1 - mu)) / |1 - mu|
//   DoublePrime  p''(v) = p_kappa((v - c)/(1 - mu)) / |1 - mu|
//   Tilde        p~(v)  = p_Omega(v/(1 - mu)) / |1 - mu|   subtracted, harmonic
//   Hat          p^(v)  = p_kappa(v/(1 - mu)) / |1 - mu|   subtracted, linear
enum class PapFamily { Base, Omega, Kappa, Prime, DoublePrime, Tilde, Hat };

std::string to_string(PapFamily family);

struct PapParams {
  PotentialKind potential = PotentialKind::Harmonic;  // Harmonic or Linear
  double mass = 1.0;
  double time = 1.0;
  double x = 0.0;
  double y = 0.0;
  double omega = 0.0;     // harmonic potential frequency w
  double k = 0.0;         // linear potential slope
  double omega_bg = 0.0;  // harmonic background Omega
  double kappa_bg = 0.0;  // linear background kappa
  int n_truncation = 0;   // spectral series cut-off; 0 sums to convergence
};

// Gaussian PAP of V = kx: mean kT(x+y)/2, variance k^2 T^3 / 12m.
// Throws DegenerateDistribution for k = 0 (the density is delta(v)).
double pap_linear(double v, double k, double time, double mass = 1.0, double x = 0.0, double y = 0.0);

// Spectral series for the harmonic oscillator PAP at x = y = 0, summed over
// even n <= n_truncation (n_truncation = 0: until the terms vanish).
// Zero for v <= 0. Negative partial sums from truncation are clamped to 0.
double pap_harmonic_spectral(double v, double omega, double time, int n_truncation = 0);

// Compensation factor (K_0 / K_U) e^{-mu v} for (Harmonic, Harmonic) and
// (Linear, Linear); throws UnsupportedPair for any other pair.
double log_compensation_factor(double v, const PotentialSpec& potential,
                               const BackgroundSpec& background, const SimConfig& config);
double compensation_factor(double v, const PotentialSpec& potential,
                           const BackgroundSpec& background, const SimConfig& config);

// Density of `family` at v. Throws UnsupportedFamily when no base PAP exists
// (e.g. harmonic families away from x = y = 0) and DegenerateDistribution
// for the singular cases w = Omega (Prime, Tilde) and k = kappa
// (DoublePrime, Hat).
double pap_transformed(double v, PapFamily family, const PapParams& params);

// Closed support [lo, hi] of a family; infinite ends are +-infinity.
struct Support {
  double lo;
  double hi;
};
Support pap_support(PapFamily family, const PapParams& params);

// Which family the sampled values of a bundle follow: plain sampling gives
// Base/Omega/Kappa, compensated shifting gives Prime/DoublePrime and
// potential subtraction gives Tilde/Hat.
PapFamily family_for(const Bundle& bundle);
PapParams params_for(const Bundle& bundle);

struct PapCurve {
  std::vector<double> grid;
  std::vector<double> density;
  PapFamily family = PapFamily::Base;
  PapParams params;
};

PapCurve tabulate_pap(PapFamily family, const PapParams& params, const std::vector<double>& grid);

// CSV with header `v,density`.
void write_pap_csv(std::ostream& out, const PapCurve& curve);

}  // namespace wmc
