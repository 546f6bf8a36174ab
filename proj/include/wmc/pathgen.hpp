#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wmc/model.hpp"
#include "wmc/rng.hpp"

namespace wmc {

// Discretised trajectory stored row-major: point k occupies
// data[k*dim .. k*dim + dim). Points run k = 0 .. n_points.
template <typename Tag>
class PathPoints {
 public:
  PathPoints() = default;
  PathPoints(std::size_t n_points, int dim)
      : n_points_(n_points), dim_(dim), data_((n_points + 1) * static_cast<std::size_t>(dim), 0.0) {}

  std::size_t n_points() const { return n_points_; }
  int dimension() const { return dim_; }

  std::span<double> point(std::size_t k) { return {data_.data() + k * dim_, static_cast<std::size_t>(dim_)}; }
  std::span<const double> point(std::size_t k) const {
    return {data_.data() + k * dim_, static_cast<std::size_t>(dim_)};
  }
  double& at(std::size_t k, int axis) { return data_[k * dim_ + axis]; }
  double at(std::size_t k, int axis) const { return data_[k * dim_ + axis]; }

  std::span<const double> raw() const { return data_; }

 private:
  std::size_t n_points_ = 0;
  int dim_ = 1;
  std::vector<double> data_;
};

struct UnitTag {};
struct PhysicalTag {};

// Dimensionless fluctuation q(u_k), u_k = k / n_points; q_0 = q_N = 0.
using UnitPath = PathPoints<UnitTag>;
// Physical trajectory x(u_k) with x(u_0) = x_start and x(u_N) = x_end.
using PhysicalPath = PathPoints<PhysicalTag>;

// C_1 .. C_{N-1} of the forward elimination, C_1 = 2 + a, C_k = C_1 - 1/C_{k-1}.
struct EliminationCoefficients {
  double alpha = 0.0;
  std::vector<double> values;  // values[k-1] = C_k

  double operator[](std::size_t k) const { return values[k - 1]; }
};

EliminationCoefficients elimination_coefficients(double alpha, std::size_t n_points);

// alpha = Omega^2 T^2 / N^2; independent of the mass.
double alpha_from_omega(double omega_bg, double time, std::size_t n_points);

// Dimensionless per-site drift kappa T^{3/2} / (sqrt(m) N^2) applied to the
// unit trajectory by a linear background kappa * x.
double beta_effective_from_kappa(double kappa_bg, double time, double mass, std::size_t n_points);

// beta_k = (k + 1) beta / 2: the elimination shifts of a uniform drift beta.
double linear_shift(double beta, std::size_t k);

// sum_{k=1}^{N-1} beta_k^2 / C_k = beta^2 N (N + 1)(N - 1) / 12.
double linear_completion_sum(double beta, std::size_t n_points);

// Per-axis sampling plan for the Gaussian weight
//   exp(-(N/2) * sum_k [(q_k - q_{k-1})^2 + a q_k^2 + 2 h_k q_k])
// with Dirichlet ends. `shifts` holds the elimination shifts b_1..b_{N-1},
// b_1 = h_{N-1}, b_k = h_{N-k} + b_{k-1} / C_{k-1}.
struct AxisPlan {
  EliminationCoefficients coefficients;
  std::vector<double> shifts;     // shifts[k-1] = b_k; empty when h == 0
  std::vector<double> scales;     // scales[k-1] = 1 / sqrt(N C_k)
  std::vector<double> inverse_c;  // inverse_c[k-1] = 1 / C_k
};

AxisPlan make_axis_plan(double alpha, std::span<const double> site_field, std::size_t n_points);

// Draws unit paths for one (config, background) pair. The constructor does
// the O(N) setup once; generate() is O(N) per axis.
class PathSampler {
 public:
  PathSampler(const SimConfig& config, const BackgroundSpec& background);

  UnitPath generate(const StreamKey& key) const;
  void generate_into(const StreamKey& key, UnitPath& path) const;

  const AxisPlan& plan(int axis) const { return plans_.at(static_cast<std::size_t>(axis)); }

 private:
  std::size_t n_points_;
  int dim_;
  std::vector<AxisPlan> plans_;
};

// Convenience wrapper; builds a PathSampler for a single path.
UnitPath generate_unit_path(const SimConfig& config, const BackgroundSpec& background,
                            const StreamKey& key);

// x(u) = x + (y - x) u + sqrt(T/m) q(u).
PhysicalPath embed_path(const UnitPath& q, const SimConfig& config);
void embed_path_into(const UnitPath& q, const SimConfig& config, PhysicalPath& out);

}  // namespace wmc
