#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wmc/model.hpp"
#include "wmc/pathgen.hpp"

namespace wmc {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// v = (T/N) sum_{k=1}^{N} V(x(u_k)); the k = 0 node is excluded.
double wilson_line(const PhysicalPath& path, const PotentialSpec& potential, const SimConfig& config);

// nu = (T/N) sum_{k=1}^{N} [V(x(u_k)) - U(x(u_k))].
// Throws SubtractionWithoutBackground when the background is None.
double wilson_line_subtracted(const PhysicalPath& path, const PotentialSpec& potential,
                              const BackgroundSpec& background, const SimConfig& config);

enum class WilsonKind { Raw, Subtracted };

struct WilsonSampleSet {
  std::vector<double> values;
  WilsonKind kind = WilsonKind::Raw;
  Bundle bundle;
};

struct SamplingOptions {
  int workers = 1;
};

// Samples config.n_paths Wilson-line values, trajectory i drawn from
// StreamKey{config.seed, i, axis}. Paths are generated in the bundle's
// background. Output order is trajectory order.
WilsonSampleSet sample_wilson_lines(const Bundle& bundle, WilsonKind kind,
                                    const SamplingOptions& options = {});

// CSV with header `trajectory_id,value`.
void write_wilson_csv(std::ostream& out, const WilsonSampleSet& set);

}  // namespace wmc
