#include "wmc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "wmc/csv.hpp"
#include "wmc/kernels.hpp"
#include "wmc/pap.hpp"
#include "wmc/rng.hpp"

namespace wmc {

KernelEstimate reduce_summands(const std::vector<double>& log_s, double log_prefactor) {
  KernelEstimate est;
  est.n_paths = static_cast<std::int64_t>(log_s.size());
  if (log_s.empty()) throw Error(ErrorCode::EmptySampleSet, "no summands to average");
  const double top = *std::max_element(log_s.begin(), log_s.end());
  long double sum = 0.0L;
  for (double ls : log_s) sum += std::exp(static_cast<long double>(ls - top));
  const long double n = static_cast<long double>(log_s.size());
  const long double mean = sum / n;
  long double ss = 0.0L;
  for (double ls : log_s) {
    const long double d = std::exp(static_cast<long double>(ls - top)) - mean;
    ss += d * d;
  }
  const long double sd = log_s.size() > 1 ? std::sqrt(ss / (n - 1.0L)) : 0.0L;
  const double log_scale = log_prefactor + top;
  est.log_value = log_scale + static_cast<double>(std::log(mean));
  est.value = std::exp(est.log_value);
  est.std_error = std::exp(log_scale) * static_cast<double>(sd / std::sqrt(n));
  return est;
}

std::vector<double> log_summands(const WilsonSampleSet& set) {
  const Bundle& b = set.bundle;
  std::vector<double> out(set.values.size());
  if (set.kind == WilsonKind::Raw && b.method == MethodSpec::Compensated) {
    // -v - log F(v), with log F(v) = log(K_0/K_U) - mu v.
    const double log_ratio = log_compensation_factor(0.0, b.potential, b.background, b.config);
    const double mu = log_ratio - log_compensation_factor(1.0, b.potential, b.background, b.config);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double v = set.values[i];
      out[i] = -v - (log_ratio - mu * v);
    }
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -set.values[i];
  return out;
}

KernelEstimate estimate_plain(const Bundle& bundle, const SamplingOptions& options) {
  if (bundle.background.kind != BackgroundKind::None)
    throw Error(ErrorCode::IncompatibleMethod, "plain estimator samples free paths; background must be none");
  Bundle b = bundle;
  b.method = MethodSpec::Plain;
  auto est = reduce_summands(log_summands(sample_wilson_lines(b, WilsonKind::Raw, options)),
                             log_kernel_free(b.config));
  est.method = MethodSpec::Plain;
  est.time = b.config.time;
  return est;
}

KernelEstimate estimate_compensated(const Bundle& bundle, const SamplingOptions& options) {
  Bundle b = bundle;
  b.method = MethodSpec::Compensated;
  // Throws UnsupportedPair for pairs without a closed-form factor.
  (void)log_compensation_factor(0.0, b.potential, b.background, b.config);
  auto est = reduce_summands(log_summands(sample_wilson_lines(b, WilsonKind::Raw, options)),
                             log_kernel_free(b.config));
  est.method = MethodSpec::Compensated;
  est.time = b.config.time;
  return est;
}

KernelEstimate estimate_subtracted(const Bundle& bundle, const SamplingOptions& options) {
  if (bundle.background.kind == BackgroundKind::None)
    throw Error(ErrorCode::SubtractionWithoutBackground, "potential subtraction needs a background");
  Bundle b = bundle;
  b.method = MethodSpec::Subtracted;
  auto est = reduce_summands(log_summands(sample_wilson_lines(b, WilsonKind::Subtracted, options)),
                             log_kernel_background(b.config, b.background));
  est.method = MethodSpec::Subtracted;
  est.time = b.config.time;
  return est;
}

KernelEstimate estimate(const Bundle& bundle, const SamplingOptions& options) {
  switch (bundle.method) {
    case MethodSpec::Plain: return estimate_plain(bundle, options);
    case MethodSpec::Compensated: return estimate_compensated(bundle, options);
    case MethodSpec::Subtracted: return estimate_subtracted(bundle, options);
  }
  throw Error(ErrorCode::IncompatibleMethod, "unknown method");
}

SweepTable sweep(const Bundle& bundle, const std::vector<double>& t_grid, const SamplingOptions& options) {
  if (t_grid.empty()) throw Error(ErrorCode::InvalidParameter, "t_grid: must not be empty");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw Error(ErrorCode::InvalidParameter, "t_grid: must be strictly increasing");
  SweepTable table;
  table.method = bundle.method;
  table.potential = to_string(bundle.potential.kind);
  table.background = to_string(bundle.background.kind);
  for (std::size_t r = 0; r < t_grid.size(); ++r) {
    SweepRow row;
    row.time = t_grid[r];
    try {
      Bundle b = bundle;
      b.config.time = t_grid[r];
      b.config.seed = derive_seed(bundle.config.seed, r);
      b = validated(b.config, b.potential, b.background, b.method);
      const auto est = estimate(b, options);
      row.estimate = est.value;
      row.std_error = est.std_error;
      if (est.value > 2.0 * est.std_error) {
        row.log_estimate = est.log_value;
        row.log_std_error = est.std_error / est.value;
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> parse_t_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "t_grid: expected start:stop:count, got '" + spec + "'");
  double start = 0, stop = 0;
  long count = 0;
  try {
    start = std::stod(parts[0]);
    stop = std::stod(parts[1]);
    count = std::stol(parts[2]);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "t_grid: cannot parse '" + spec + "'");
  }
  if (count < 1 || !(start > 0) || (count > 1 && !(stop > start)))
    throw Error(ErrorCode::ConfigError, "t_grid: need 0 < start < stop and count >= 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / (count - 1);
  return grid;
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "T,K,K_err,logK,logK_err,method,potential,background\n";
  for (const auto& row : table.rows) {
    out << csv::number(row.time) << ',';
    if (row.error) {
      out << ",,,,";
    } else {
      out << csv::number(row.estimate) << ',' << csv::number(row.std_error) << ',';
      if (row.log_estimate) out << csv::number(*row.log_estimate);
      out << ',';
      if (row.log_std_error) out << csv::number(*row.log_std_error);
      out << ',';
    }
    out << to_string(table.method) << ',' << table.potential << ',' << table.background << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

MethodSpec parse_method_name(const std::string& s) {
  if (s == "plain") return MethodSpec::Plain;
  if (s == "compensated") return MethodSpec::Compensated;
  if (s == "subtracted") return MethodSpec::Subtracted;
  throw Error(ErrorCode::ConfigError, "unknown method '" + s + "'");
}

}  // namespace

SweepTable read_sweep_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("T,K,K_err,logK,logK_err", 0) != 0)
    throw Error(ErrorCode::ConfigError, "sweep table: missing or unexpected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw Error(ErrorCode::ConfigError, "sweep table line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      SweepRow row;
      row.time = std::stod(f[0]);
      if (f[1].empty()) {
        row.error = "row failed";
      } else {
        row.estimate = std::stod(f[1]);
        row.std_error = std::stod(f[2]);
        row.log_estimate = parse_optional(f[3]);
        row.log_std_error = parse_optional(f[4]);
      }
      table.method = parse_method_name(f[5]);
      table.potential = f[6];
      table.background = f[7];
      table.rows.push_back(row);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ConfigError, "sweep table line " + std::to_string(line_no) + ": bad number");
    }
  }
  return table;
}

}  // namespace wmc
