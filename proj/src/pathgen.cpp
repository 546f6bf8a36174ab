#include "wmc/pathgen.hpp"

#include <cmath>
#include <numbers>

namespace wmc {

EliminationCoefficients elimination_coefficients(double alpha, std::size_t n_points) {
  EliminationCoefficients ec;
  ec.alpha = alpha;
  if (n_points < 2) return ec;
  ec.values.resize(n_points - 1);
  const double c1 = 2.0 + alpha;
  ec.values[0] = c1;
  for (std::size_t k = 2; k < n_points; ++k) ec.values[k - 1] = c1 - 1.0 / ec.values[k - 2];
  return ec;
}

double alpha_from_omega(double omega_bg, double time, std::size_t n_points) {
  const double r = omega_bg * time / static_cast<double>(n_points);
  return r * r;
}

double beta_effective_from_kappa(double kappa_bg, double time, double mass, std::size_t n_points) {
  const double n = static_cast<double>(n_points);
  return kappa_bg * time * std::sqrt(time / mass) / (n * n);
}

double linear_shift(double beta, std::size_t k) { return 0.5 * static_cast<double>(k + 1) * beta; }

double linear_completion_sum(double beta, std::size_t n_points) {
  const double n = static_cast<double>(n_points);
  return beta * beta * n * (n + 1.0) * (n - 1.0) / 12.0;
}

AxisPlan make_axis_plan(double alpha, std::span<const double> site_field, std::size_t n_points) {
  AxisPlan plan;
  plan.coefficients = elimination_coefficients(alpha, n_points);
  const std::size_t m = plan.coefficients.values.size();
  plan.scales.resize(m);
  plan.inverse_c.resize(m);
  const double n = static_cast<double>(n_points);
  for (std::size_t k = 1; k <= m; ++k) {
    const double c = plan.coefficients[k];
    plan.scales[k - 1] = std::sqrt(2.0 / (n * c));
    plan.inverse_c[k - 1] = 1.0 / c;
  }
  // site_field[i-1] = h_i for interior sites i = 1..N-1.
  bool any = false;
  for (double h : site_field) any = any || h != 0.0;
  if (!any) return plan;
  plan.shifts.resize(m);
  plan.shifts[0] = site_field[n_points - 2];
  for (std::size_t k = 2; k <= m; ++k)
    plan.shifts[k - 1] = site_field[n_points - k - 1] + plan.shifts[k - 2] / plan.coefficients[k - 1];
  return plan;
}

namespace {

AxisPlan linear_axis_plan(double beta, std::size_t n_points) {
  AxisPlan plan = make_axis_plan(0.0, {}, n_points);
  if (beta == 0.0) return plan;
  plan.shifts.resize(plan.coefficients.values.size());
  for (std::size_t k = 1; k <= plan.shifts.size(); ++k) plan.shifts[k - 1] = linear_shift(beta, k);
  return plan;
}

}  // namespace

PathSampler::PathSampler(const SimConfig& config, const BackgroundSpec& background)
    : n_points_(static_cast<std::size_t>(config.n_points)), dim_(config.dimension) {
  plans_.reserve(static_cast<std::size_t>(dim_));
  const double n = static_cast<double>(n_points_);
  const double sqrt_m_over_t = std::sqrt(config.mass / config.time);
  for (int j = 0; j < dim_; ++j) {
    switch (background.kind) {
      case BackgroundKind::None:
        plans_.push_back(make_axis_plan(0.0, {}, n_points_));
        break;
      case BackgroundKind::Harmonic: {
        const double alpha = alpha_from_omega(background_omega(background, j), config.time, n_points_);
        // Offset of the straight line from the well centre, in unit-path
        // coordinates; zero when both endpoints sit at the centre.
        const double c = background_center(background, j);
        const double x0 = config.x_start[j];
        const double x1 = config.x_end[j];
        std::vector<double> field;
        if (x0 != c || x1 != c) {
          field.resize(n_points_ - 1);
          for (std::size_t i = 1; i < n_points_; ++i) {
            const double u = static_cast<double>(i) / n;
            field[i - 1] = alpha * sqrt_m_over_t * (x0 + (x1 - x0) * u - c);
          }
        }
        plans_.push_back(make_axis_plan(alpha, field, n_points_));
        break;
      }
      case BackgroundKind::Linear:
        plans_.push_back(linear_axis_plan(
            beta_effective_from_kappa(background_kappa(background, j), config.time, config.mass, n_points_),
            n_points_));
        break;
    }
  }
}

void PathSampler::generate_into(const StreamKey& key, UnitPath& path) const {
  if (path.n_points() != n_points_ || path.dimension() != dim_) path = UnitPath(n_points_, dim_);
  const std::size_t n = n_points_;
  std::vector<double> omega(n - 1);
  for (int j = 0; j < dim_; ++j) {
    const AxisPlan& plan = plans_[static_cast<std::size_t>(j)];
    GaussianStream stream(StreamKey{key.seed, key.trajectory_index, static_cast<std::uint32_t>(j)});
    stream.fill(omega, std::numbers::sqrt2 / 2.0);  // variance 1/2
    const bool shifted = !plan.shifts.empty();
    double prev = 0.0;
    path.at(0, j) = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t k = n - i;
      const double qbar = plan.scales[k - 1] * omega[i - 1];
      const double carried = shifted ? prev - plan.shifts[k - 1] : prev;
      prev = qbar + carried * plan.inverse_c[k - 1];
      path.at(i, j) = prev;
    }
    path.at(n, j) = 0.0;
  }
}

UnitPath PathSampler::generate(const StreamKey& key) const {
  UnitPath path(n_points_, dim_);
  generate_into(key, path);
  return path;
}

UnitPath generate_unit_path(const SimConfig& config, const BackgroundSpec& background,
                            const StreamKey& key) {
  return PathSampler(config, background).generate(key);
}

void embed_path_into(const UnitPath& q, const SimConfig& config, PhysicalPath& out) {
  const std::size_t n = q.n_points();
  const int dim = q.dimension();
  if (out.n_points() != n || out.dimension() != dim) out = PhysicalPath(n, dim);
  const double scale = std::sqrt(config.time / config.mass);
  const double nd = static_cast<double>(n);
  for (int j = 0; j < dim; ++j) {
    const double x0 = config.x_start[j];
    const double dx = config.x_end[j] - x0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double u = static_cast<double>(k) / nd;
      out.at(k, j) = x0 + dx * u + scale * q.at(k, j);
    }
    // Pin the ends exactly; x0 + dx * 1 can differ from x_end by one ulp.
    out.at(0, j) = x0;
    out.at(n, j) = config.x_end[j];
  }
}

PhysicalPath embed_path(const UnitPath& q, const SimConfig& config) {
  PhysicalPath out(q.n_points(), q.dimension());
  embed_path_into(q, config, out);
  return out;
}

}  // namespace wmc
