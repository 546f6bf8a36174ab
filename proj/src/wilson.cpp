#include "wmc/wilson.hpp"

#include <cmath>
#include <ostream>

#include "wmc/csv.hpp"
#include "wmc/parallel.hpp"
#include "wmc/potentials.hpp"

namespace wmc {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

double wilson_line(const PhysicalPath& path, const PotentialSpec& potential, const SimConfig& config) {
  if (potential.kind == PotentialKind::Free) return 0.0;
  CompensatedSum sum;
  for (std::size_t k = 1; k <= path.n_points(); ++k) sum.add(evaluate(potential, path.point(k), config.mass));
  return config.time / static_cast<double>(path.n_points()) * sum.value();
}

double wilson_line_subtracted(const PhysicalPath& path, const PotentialSpec& potential,
                              const BackgroundSpec& background, const SimConfig& config) {
  if (background.kind == BackgroundKind::None)
    throw Error(ErrorCode::SubtractionWithoutBackground, "potential subtraction needs a background");
  CompensatedSum sum;
  for (std::size_t k = 1; k <= path.n_points(); ++k) {
    const auto x = path.point(k);
    sum.add(evaluate(potential, x, config.mass) - evaluate_background(background, x, config.mass));
  }
  return config.time / static_cast<double>(path.n_points()) * sum.value();
}

WilsonSampleSet sample_wilson_lines(const Bundle& bundle, WilsonKind kind, const SamplingOptions& options) {
  if (kind == WilsonKind::Subtracted && bundle.background.kind == BackgroundKind::None)
    throw Error(ErrorCode::SubtractionWithoutBackground, "subtracted samples need a background");
  const SimConfig& config = bundle.config;
  const PathSampler sampler(config, bundle.background);
  WilsonSampleSet set;
  set.kind = kind;
  set.bundle = bundle;
  set.values.resize(static_cast<std::size_t>(config.n_paths));
  parallel_blocks(set.values.size(), options.workers, [&](std::size_t begin, std::size_t end, int) {
    UnitPath q(static_cast<std::size_t>(config.n_points), config.dimension);
    PhysicalPath x(static_cast<std::size_t>(config.n_points), config.dimension);
    for (std::size_t i = begin; i < end; ++i) {
      sampler.generate_into(StreamKey{config.seed, i, 0}, q);
      embed_path_into(q, config, x);
      set.values[i] = kind == WilsonKind::Raw
                          ? wilson_line(x, bundle.potential, config)
                          : wilson_line_subtracted(x, bundle.potential, bundle.background, config);
    }
  });
  return set;
}

void write_wilson_csv(std::ostream& out, const WilsonSampleSet& set) {
  out << "trajectory_id,value\n";
  for (std::size_t i = 0; i < set.values.size(); ++i) out << i << ',' << csv::number(set.values[i]) << '\n';
}

}  // namespace wmc
