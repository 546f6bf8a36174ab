#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wmc/estimator.hpp"
#include "wmc/pap.hpp"
#include "wmc/wilson.hpp"

namespace wmc {

// Density-normalised histogram over [min, max] of the values; grid holds
// bin centres. A constant sample set gets a unit-width range around it.
PapCurve histogram(std::span<const double> values, int n_bins);
PapCurve histogram(const WilsonSampleSet& samples, int n_bins);

enum class GofStatistic { KolmogorovSmirnov, ChiSquare };

struct GofReport {
  GofStatistic statistic = GofStatistic::KolmogorovSmirnov;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;  // value < threshold
  std::int64_t sample_size = 0;
};

// Asymptotic one-sample KS critical constant sqrt(-ln(alpha/2) / 2).
double ks_critical_constant(double alpha);

// One-sample KS test against `cdf`; threshold c(alpha) / sqrt(N).
GofReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                  double alpha = 0.01);

// CDF of an analytic family, integrated cell by cell with 8-point
// Gauss-Legendre on [lo, hi] and interpolated linearly between cell edges.
// Below lo it is 0, above hi the integrated mass at hi.
class TabulatedCdf {
 public:
  TabulatedCdf(std::function<double(double)> density, double lo, double hi, std::size_t n_cells);

  double operator()(double v) const;
  double total_mass() const { return cumulative_.back(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
  double width_;
  std::vector<double> cumulative_;
};

// CDF of a PAP family over a range that covers `samples`: the support's
// finite lower end if it has one, else min - range/2; max + range/2 above.
TabulatedCdf pap_cdf_for_samples(PapFamily family, const PapParams& params, std::span<const double> samples,
                                 std::size_t n_cells = 4000);

struct CovarianceOracle {
  std::size_t n_interior = 0;
  std::vector<double> covariance;  // row-major n_interior x n_interior
  std::vector<double> mean;

  double cov(std::size_t i, std::size_t j) const { return covariance[(i - 1) * n_interior + (j - 1)]; }
  double mean_at(std::size_t i) const { return mean[i - 1]; }
};

// Exact moments of the interior points q_1..q_{N-1} under the discretised
// Gaussian weight with precision N tridiag(2 + alpha, -1) and uniform site
// field beta. Results are scaled by T/m, so mass = time = 1 gives unit-path
// moments. Requires n_points <= 256.
CovarianceOracle covariance_oracle(double alpha, double beta, std::size_t n_points, double mass = 1.0,
                                   double time = 1.0);

struct EnergyFit {
  double e0 = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double residual_rms = 0.0;
  int n_rows_used = 0;
};

// Weighted least squares of logK against T over rows in [t_min, t_max]
// with finite logK; e0 = -slope.
EnergyFit fit_ground_state(const SweepTable& table, double t_min, double t_max);

// Delete-one jackknife standard error of the mean.
double jackknife_error(std::span<const double> values);

// Slope of log(empirical / reference) against v over bins holding at least
// `min_count` samples, with its standard error.
struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  int n_bins_used = 0;
};
SlopeFit log_ratio_slope(std::span<const double> values, const std::function<double(double)>& reference,
                         int n_bins, int min_count = 200);

std::string to_json_line(const GofReport& report);
std::string to_json_line(const EnergyFit& fit);

// CSV: v,empirical_density,analytic_density
void write_overlay_csv(std::ostream& out, const PapCurve& empirical, const std::vector<double>& analytic);

}  // namespace wmc
