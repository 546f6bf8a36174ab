#pragma once

#include <vector>

#include "wmc/model.hpp"

namespace wmc {

// Closed-form reference kernels K(y, x; T). The log_ forms stay finite
// where the kernel itself under- or overflows.

// (m / 2 pi T)^{D/2} exp(-m |y - x|^2 / 2T)
double log_kernel_free(const SimConfig& config);
double kernel_free(const SimConfig& config);

// Mehler kernel, product over axes with one frequency.
double log_kernel_harmonic(const SimConfig& config, double omega);
double kernel_harmonic(const SimConfig& config, double omega);

// Free kernel times exp(-k T (x + y)/2 + k^2 T^3 / 24m) per axis.
double log_kernel_linear(const SimConfig& config, double slope);
double kernel_linear(const SimConfig& config, double slope);

// One-dimensional building blocks.
double log_kernel_free_1d(double x, double y, double time, double mass);
double log_kernel_harmonic_1d(double x, double y, double time, double mass, double omega);
double log_kernel_linear_1d(double x, double y, double time, double mass, double slope);

// Kernel in the background alone (K_U), honouring per-axis parameters and
// the harmonic centre. K_U = K_0 for BackgroundKind::None.
double log_kernel_background(const SimConfig& config, const BackgroundSpec& background);

// Kernel for the potential itself where a closed form exists (Free,
// Harmonic, Linear); throws UnsupportedPair otherwise.
double log_kernel_exact(const SimConfig& config, const PotentialSpec& potential);

struct EnergyLevels {
  std::vector<double> values;  // ascending
  PotentialKind potential = PotentialKind::Free;
};

// Levels of V = g|x|: -E_n = (g^2 / 2m)^{1/3} times the ((n+2)/2)-th zero of
// Ai' for even n and the ((n+1)/2)-th zero of Ai for odd n. Returns
// E_0 .. E_{n_max}.
EnergyLevels absolute_value_levels(double g, double mass, int n_max);

// -alpha^2 / 2m; only lambda = 1 is supported.
double poschl_teller_ground_energy(double alpha, int lambda, double mass);

}  // namespace wmc
