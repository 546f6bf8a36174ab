#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wmc/model.hpp"
#include "wmc/wilson.hpp"

namespace wmc {

struct KernelEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double log_value = 0.0;  // log(value), finite even when value underflows
  std::int64_t n_paths = 0;
  MethodSpec method = MethodSpec::Plain;
  double time = 0.0;
};

// Mean of exp(log_summands) times exp(log_prefactor), with the sample
// standard error. Accumulates relative to the largest summand in extended
// precision and strict index order.
KernelEstimate reduce_summands(const std::vector<double>& log_summands, double log_prefactor);

// K_0 * mean(e^{-v_i}) over free paths. Requires no background.
KernelEstimate estimate_plain(const Bundle& bundle, const SamplingOptions& options = {});

// K_0 * mean(e^{-v_i} / F(v_i)) over paths in the background.
KernelEstimate estimate_compensated(const Bundle& bundle, const SamplingOptions& options = {});

// K_U * mean(e^{-nu_i}) over paths in the background.
KernelEstimate estimate_subtracted(const Bundle& bundle, const SamplingOptions& options = {});

// Dispatches on bundle.method.
KernelEstimate estimate(const Bundle& bundle, const SamplingOptions& options = {});

// Log-domain summands for a sampled set, as used by the estimators.
std::vector<double> log_summands(const WilsonSampleSet& set);

struct SweepRow {
  double time = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  std::optional<double> log_estimate;   // present when estimate > 2 std_error
  std::optional<double> log_std_error;
  std::optional<std::string> error;     // set when this row failed
};

struct SweepTable {
  std::vector<SweepRow> rows;
  MethodSpec method = MethodSpec::Plain;
  std::string potential;
  std::string background;
};

// One independent estimate per T; row r uses seed derive_seed(seed, r).
SweepTable sweep(const Bundle& bundle, const std::vector<double>& t_grid,
                 const SamplingOptions& options = {});

// start:stop:count, linearly spaced, both ends included.
std::vector<double> parse_t_grid(const std::string& spec);

// CSV: T,K,K_err,logK,logK_err,method,potential,background
void write_sweep_csv(std::ostream& out, const SweepTable& table);
SweepTable read_sweep_csv(std::istream& in);

}  // namespace wmc
