#include "wmc/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "wmc/csv.hpp"

namespace wmc {

PapCurve histogram(std::span<const double> values, int n_bins) {
  if (values.empty()) throw Error(ErrorCode::EmptySampleSet, "histogram of an empty sample set");
  if (n_bins < 2) throw Error(ErrorCode::InvalidParameter, "histogram needs n_bins >= 2");
  auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it, hi = *max_it;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / n_bins;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n_bins), 0);
  for (double v : values) {
    auto b = static_cast<std::int64_t>((v - lo) / width);
    b = std::clamp<std::int64_t>(b, 0, n_bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  PapCurve curve;
  const double norm = 1.0 / (static_cast<double>(values.size()) * width);
  for (int b = 0; b < n_bins; ++b) {
    curve.grid.push_back(lo + (b + 0.5) * width);
    curve.density.push_back(static_cast<double>(counts[static_cast<std::size_t>(b)]) * norm);
  }
  return curve;
}

PapCurve histogram(const WilsonSampleSet& samples, int n_bins) {
  PapCurve curve = histogram(std::span<const double>(samples.values), n_bins);
  if (samples.bundle.config.dimension == 1) {
    try {
      curve.family = family_for(samples.bundle);
      curve.params = params_for(samples.bundle);
    } catch (const Error&) {
      // No analytic family; the curve stays purely empirical.
    }
  }
  return curve;
}

double ks_critical_constant(double alpha) { return std::sqrt(-0.5 * std::log(0.5 * alpha)); }

GofReport ks_test(std::span<const double> samples, const std::function<double(double)>& cdf, double alpha) {
  GofReport report;
  report.sample_size = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return report;
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  report.value = d;
  report.threshold = ks_critical_constant(alpha) / std::sqrt(n);
  report.pass = report.value < report.threshold;
  return report;
}

namespace {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                0.9602898564975363};
constexpr double kGlWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                  0.1012285362903763};

}  // namespace

TabulatedCdf::TabulatedCdf(std::function<double(double)> density, double lo, double hi, std::size_t n_cells)
    : lo_(lo), hi_(hi), width_((hi - lo) / static_cast<double>(n_cells)), cumulative_(n_cells + 1, 0.0) {
  if (!(hi > lo) || n_cells == 0) throw Error(ErrorCode::InvalidParameter, "TabulatedCdf needs lo < hi");
  const double half = 0.5 * width_;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const double mid = lo + (static_cast<double>(c) + 0.5) * width_;
    double s = 0.0;
    for (int k = 0; k < 4; ++k)
      s += kGlWeights[k] * (density(mid - half * kGlNodes[k]) + density(mid + half * kGlNodes[k]));
    cumulative_[c + 1] = cumulative_[c] + half * s;
  }
}

double TabulatedCdf::operator()(double v) const {
  if (v <= lo_) return 0.0;
  if (v >= hi_) return cumulative_.back();
  const double t = (v - lo_) / width_;
  const auto c = std::min(static_cast<std::size_t>(t), cumulative_.size() - 2);
  const double frac = t - static_cast<double>(c);
  return cumulative_[c] + frac * (cumulative_[c + 1] - cumulative_[c]);
}

TabulatedCdf pap_cdf_for_samples(PapFamily family, const PapParams& params, std::span<const double> samples,
                                 std::size_t n_cells) {
  if (samples.empty()) throw Error(ErrorCode::EmptySampleSet, "no samples to bracket the CDF range");
  auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  const double range = std::max(*max_it - *min_it, 1e-12);
  const Support support = pap_support(family, params);
  const double lo = std::isfinite(support.lo) ? support.lo : *min_it - 0.5 * range;
  const double hi = std::isfinite(support.hi) ? support.hi : *max_it + 0.5 * range;
  return TabulatedCdf([&](double v) { return pap_transformed(v, family, params); }, lo, hi, n_cells);
}

CovarianceOracle covariance_oracle(double alpha, double beta, std::size_t n_points, double mass, double time) {
  if (n_points < 2 || n_points > 256)
    throw Error(ErrorCode::InvalidParameter, "covariance_oracle needs 2 <= n_points <= 256");
  if (!(mass > 0.0) || !(time > 0.0)) throw Error(ErrorCode::InvalidParameter, "covariance_oracle needs m, T > 0");
  const auto n = static_cast<Eigen::Index>(n_points - 1);
  const double np = static_cast<double>(n_points);
  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    laplacian(i, i) = 2.0 + alpha;
    if (i + 1 < n) laplacian(i, i + 1) = laplacian(i + 1, i) = -1.0;
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(np * laplacian);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::SingularPrecision, "precision matrix is not positive definite");
  const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(n, n));
  // Weight exp(-(N/2) q^T L q - N beta sum q): mean = -L^{-1} beta 1.
  const Eigen::VectorXd mean = -np * (cov * Eigen::VectorXd::Constant(n, beta));

  CovarianceOracle out;
  out.n_interior = static_cast<std::size_t>(n);
  const double scale = time / mass;
  out.covariance.resize(out.n_interior * out.n_interior);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.covariance[static_cast<std::size_t>(i * n + j)] = scale * cov(i, j);
  out.mean.resize(out.n_interior);
  for (Eigen::Index i = 0; i < n; ++i) out.mean[static_cast<std::size_t>(i)] = std::sqrt(scale) * mean(i);
  return out;
}

EnergyFit fit_ground_state(const SweepTable& table, double t_min, double t_max) {
  if (!(t_min < t_max)) throw Error(ErrorCode::InvalidParameter, "fit window needs T_min < T_max");
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<const SweepRow*> used;
  for (const auto& row : table.rows) {
    if (row.error || !row.log_estimate || !row.log_std_error) continue;
    if (row.time < t_min || row.time > t_max) continue;
    if (!std::isfinite(*row.log_estimate) || !(*row.log_std_error > 0.0)) continue;
    const double w = 1.0 / (*row.log_std_error * *row.log_std_error);
    s += w;
    sx += w * row.time;
    sy += w * *row.log_estimate;
    sxx += w * row.time * row.time;
    sxy += w * row.time * *row.log_estimate;
    used.push_back(&row);
  }
  if (used.size() < 3)
    throw Error(ErrorCode::InsufficientRows, "fit window [" + std::to_string(t_min) + ", " + std::to_string(t_max) +
                                                 "] holds " + std::to_string(used.size()) +
                                                 " usable rows, need at least 3");
  // Centre T for a well-conditioned normal system.
  const double tbar = sx / s;
  const double ybar = sy / s;
  const double stt = sxx - s * tbar * tbar;
  const double sty = sxy - s * tbar * ybar;
  if (!(stt > 0.0)) throw Error(ErrorCode::InsufficientRows, "fit window rows share a single T");
  const double slope = sty / stt;
  EnergyFit fit;
  fit.e0 = -slope;
  fit.std_error = std::sqrt(1.0 / stt);
  fit.intercept = ybar - slope * tbar;
  fit.t_min = t_min;
  fit.t_max = t_max;
  fit.n_rows_used = static_cast<int>(used.size());
  double rss = 0.0;
  for (const SweepRow* row : used) {
    const double r = *row->log_estimate - (fit.intercept + slope * row->time);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / static_cast<double>(used.size()));
  return fit;
}

double jackknife_error(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::InvalidParameter, "jackknife needs at least 2 values");
  const double n = static_cast<double>(values.size());
  long double total = 0.0L;
  for (double v : values) total += v;
  const double mean = static_cast<double>(total / n);
  long double ss = 0.0L;
  for (double v : values) {
    const double loo = static_cast<double>((total - v) / (n - 1.0));
    ss += (loo - mean) * (loo - mean);
  }
  return std::sqrt(static_cast<double>(ss) * (n - 1.0) / n);
}

SlopeFit log_ratio_slope(std::span<const double> values, const std::function<double(double)>& reference,
                         int n_bins, int min_count) {
  const PapCurve h = histogram(values, n_bins);
  const double width = h.grid.size() > 1 ? h.grid[1] - h.grid[0] : 1.0;
  const double n = static_cast<double>(values.size());
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (std::size_t b = 0; b < h.grid.size(); ++b) {
    const double count = h.density[b] * n * width;
    const double ref = reference(h.grid[b]);
    if (count < min_count || !(ref > 0.0)) continue;
    const double y = std::log(h.density[b] / ref);
    const double w = count;  // var(log count) ~ 1/count
    s += w;
    sx += w * h.grid[b];
    sy += w * y;
    sxx += w * h.grid[b] * h.grid[b];
    sxy += w * h.grid[b] * y;
    ++used;
  }
  SlopeFit fit;
  fit.n_bins_used = used;
  if (used < 3) throw Error(ErrorCode::InsufficientRows, "fewer than 3 well-populated bins");
  const double xbar = sx / s;
  const double stt = sxx - s * xbar * xbar;
  fit.slope = (sxy - s * xbar * (sy / s)) / stt;
  fit.std_error = std::sqrt(1.0 / stt);
  return fit;
}

std::string to_json_line(const GofReport& r) {
  nlohmann::json j = {
      {"statistic", r.statistic == GofStatistic::KolmogorovSmirnov ? "ks" : "chi_square"},
      {"value", r.value},
      {"threshold", r.threshold},
      {"pass", r.pass},
      {"sample_size", r.sample_size},
  };
  return j.dump();
}

std::string to_json_line(const EnergyFit& f) {
  nlohmann::json j = {
      {"e0", f.e0},
      {"std_error", f.std_error},
      {"intercept", f.intercept},
      {"window", {f.t_min, f.t_max}},
      {"residual_rms", f.residual_rms},
      {"n_rows_used", f.n_rows_used},
  };
  return j.dump();
}

void write_overlay_csv(std::ostream& out, const PapCurve& empirical, const std::vector<double>& analytic) {
  if (analytic.size() != empirical.grid.size())
    throw Error(ErrorCode::InvalidParameter, "overlay needs one analytic value per histogram bin");
  out << "v,empirical_density,analytic_density\n";
  for (std::size_t i = 0; i < empirical.grid.size(); ++i)
    out << csv::number(empirical.grid[i]) << ',' << csv::number(empirical.density[i]) << ','
        << csv::number(analytic[i]) << '\n';
}

}  // namespace wmc
