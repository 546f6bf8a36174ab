#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wmc/analysis.hpp"
#include "wmc/csv.hpp"
#include "wmc/kernels.hpp"
#include "wmc/pap.hpp"
#include "wmc/wilson.hpp"

#ifndef WMC_VERSION
#define WMC_VERSION "0.0.0"
#endif

namespace wmc::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  Manifest(const Context& ctx, std::string command) : ctx_(ctx), command_(std::move(command)), start_(Clock::now()) {}

  void argument(const std::string& key, const std::string& value) { arguments_[key] = value; }
  void output(const fs::path& p) { outputs_.push_back(p.string()); }

  void write() const {
    const double wall = std::chrono::duration<double>(Clock::now() - start_).count();
    nlohmann::json j = {
        {"version", WMC_VERSION},
        {"command", command_},
        {"arguments", arguments_},
        {"config", ctx_.config.entries},
        {"seed", ctx_.config.bundle.config.seed},
        {"workers", ctx_.workers},
        {"outputs", outputs_},
        {"started_at", started_at_},
        {"wall_clock_seconds", wall},
    };
    std::ofstream f(fs::path(ctx_.out_dir) / (command_ + ".manifest.json"));
    f << j.dump(2) << '\n';
  }

 private:
  const Context& ctx_;
  std::string command_;
  Clock::time_point start_;
  std::string started_at_ = utc_now();
  std::map<std::string, std::string> arguments_;
  std::vector<std::string> outputs_;
};

std::ofstream open_output(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw Error(ErrorCode::ConfigError, "output_dir: cannot write '" + p.string() + "'");
  return f;
}

Bundle checked_bundle(const Context& ctx) {
  const Bundle& b = ctx.config.bundle;
  return validated(b.config, b.potential, b.background, b.method);
}

void require_time(const Context& ctx, const char* command) {
  if (ctx.config.t_grid) throw Error(ErrorCode::ConfigError, std::string("t_grid: not used by ") + command + "; give time");
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter:
    case ErrorCode::IncompatibleMethod:
    case ErrorCode::SubtractionWithoutBackground:
    case ErrorCode::UnsupportedPair:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::UnsupportedLambda:
    case ErrorCode::ConfigError: return kConfigError;
    case ErrorCode::DegenerateDistribution:
    case ErrorCode::RootNotBracketed:
    case ErrorCode::SingularPrecision:
    case ErrorCode::InsufficientRows:
    case ErrorCode::EmptySampleSet: return kNumericalError;
  }
  return kNumericalError;
}

Context make_context(RunConfig config, const Overrides& o) {
  Context ctx;
  if (o.seed) {
    config.bundle.config.seed = *o.seed;
    config.entries["seed"] = std::to_string(*o.seed);
  }
  ctx.workers = o.workers ? *o.workers : config.workers;
  if (ctx.workers == 0) ctx.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (ctx.workers < 1) throw Error(ErrorCode::ConfigError, "--workers: must be >= 1");
  ctx.out_dir = o.out_dir ? *o.out_dir : config.output_dir;
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);
  if (ec) throw Error(ErrorCode::ConfigError, "output_dir: cannot create '" + ctx.out_dir + "': " + ec.message());
  ctx.config = std::move(config);
  return ctx;
}

std::string to_json_line(const KernelEstimate& e) {
  nlohmann::json j = {
      {"value", e.value},   {"std_error", e.std_error}, {"log_value", e.log_value},
      {"n_paths", e.n_paths}, {"method", to_string(e.method)}, {"time", e.time},
  };
  return j.dump();
}

int run_estimate(const Context& ctx, std::ostream& out) {
  require_time(ctx, "estimate");
  Manifest manifest(ctx, "estimate");
  const auto est = estimate(checked_bundle(ctx), SamplingOptions{ctx.workers});
  const std::string line = to_json_line(est);
  const fs::path path = fs::path(ctx.out_dir) / "estimate.json";
  open_output(path) << line << '\n';
  manifest.output(path);
  manifest.write();
  out << line << '\n';
  return kOk;
}

int run_sweep(const Context& ctx, std::ostream& out) {
  if (!ctx.config.t_grid) throw Error(ErrorCode::ConfigError, "t_grid: sweep needs t_grid = start:stop:count");
  Manifest manifest(ctx, "sweep");
  const auto grid = parse_t_grid(*ctx.config.t_grid);
  Bundle b = ctx.config.bundle;
  b.config.time = grid.front();
  b = validated(b.config, b.potential, b.background, b.method);
  const auto table = sweep(b, grid, SamplingOptions{ctx.workers});
  const fs::path path = fs::path(ctx.out_dir) / "sweep.csv";
  auto f = open_output(path);
  write_sweep_csv(f, table);
  f.close();
  manifest.output(path);
  manifest.write();
  std::size_t failed = 0;
  for (const auto& r : table.rows) failed += r.error ? 1 : 0;
  out << nlohmann::json{{"rows", table.rows.size()}, {"failed_rows", failed}, {"table", path.string()}}.dump() << '\n';
  return kOk;
}

int run_pap_hist(const Context& ctx, int bins, double alpha, std::ostream& out) {
  require_time(ctx, "pap-hist");
  Manifest manifest(ctx, "pap-hist");
  manifest.argument("bins", std::to_string(bins));
  manifest.argument("alpha", csv::number(alpha));
  const Bundle b = checked_bundle(ctx);
  const PapFamily family = family_for(b);
  const PapParams params = params_for(b);
  const WilsonKind kind = b.method == MethodSpec::Subtracted ? WilsonKind::Subtracted : WilsonKind::Raw;
  auto set = sample_wilson_lines(b, kind, SamplingOptions{ctx.workers});
  if (b.method == MethodSpec::Compensated) {
    // Shifted values w = (1 - mu) v + c follow the primed families.
    const double c = log_compensation_factor(0.0, b.potential, b.background, b.config);
    const double mu = c - log_compensation_factor(1.0, b.potential, b.background, b.config);
    for (double& v : set.values) v = (1.0 - mu) * v + c;
  }
  const PapCurve empirical = histogram(std::span<const double>(set.values), bins);
  const PapCurve analytic = tabulate_pap(family, params, empirical.grid);
  const auto cdf = pap_cdf_for_samples(family, params, set.values);
  const GofReport report = ks_test(set.values, [&](double v) { return cdf(v); }, alpha);

  const fs::path overlay = fs::path(ctx.out_dir) / "pap_overlay.csv";
  auto f = open_output(overlay);
  write_overlay_csv(f, empirical, analytic.density);
  f.close();
  const fs::path gof = fs::path(ctx.out_dir) / "gof.json";
  const std::string line = wmc::to_json_line(report);
  open_output(gof) << line << '\n';
  manifest.output(overlay);
  manifest.output(gof);
  manifest.write();
  out << line << '\n';
  return kOk;
}

int run_fit_energy(const Context& ctx, const std::string& table_path, const std::string& window, std::ostream& out) {
  Manifest manifest(ctx, "fit-energy");
  manifest.argument("table", table_path);
  manifest.argument("window", window);
  const auto colon = window.find(':');
  double lo = 0.0, hi = 0.0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    std::size_t used = 0;
    lo = std::stod(window.substr(0, colon), &used);
    hi = std::stod(window.substr(colon + 1), &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigError, "--window: expected t_min:t_max, got '" + window + "'");
  }
  if (!(hi > lo)) throw Error(ErrorCode::ConfigError, "--window: need t_min < t_max");
  std::ifstream in(table_path);
  if (!in) throw Error(ErrorCode::ConfigError, "--table: cannot open '" + table_path + "'");
  const SweepTable table = read_sweep_csv(in);
  const EnergyFit fit = fit_ground_state(table, lo, hi);
  const std::string line = wmc::to_json_line(fit);
  const fs::path path = fs::path(ctx.out_dir) / "energy_fit.json";
  open_output(path) << line << '\n';
  manifest.output(path);
  manifest.write();
  out << line << '\n';
  return kOk;
}

namespace {

struct Check {
  std::string name;
  std::function<std::string(bool&)> run;  // returns a detail line
};

SimConfig small_config(double time, std::uint64_t seed) {
  SimConfig c;
  c.time = time;
  c.n_paths = 2000;
  c.n_points = 200;
  c.seed = seed;
  return c;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

int run_selfcheck(const Context& ctx, std::ostream& out) {
  const std::uint64_t seed = ctx.config.bundle.config.seed;
  const SamplingOptions opts{ctx.workers};
  const std::vector<Check> checks = {
      {"free particle, plain: K = K_0 with zero error",
       [&](bool& ok) {
         const Bundle b = validated(small_config(3.0, seed), PotentialSpec::free(), BackgroundSpec::none(),
                                    MethodSpec::Plain);
         const auto e = estimate(b, opts);
         ok = e.value == kernel_free(b.config) && e.std_error == 0.0;
         return fmt("K = %.17g, error %.3g", e.value, e.std_error);
       }},
      {"harmonic subtracted by itself: K = K_harmonic with zero error",
       [&](bool& ok) {
         const Bundle b = validated(small_config(5.0, seed), PotentialSpec::harmonic(1.3),
                                    BackgroundSpec::harmonic({1.3}), MethodSpec::Subtracted);
         const auto e = estimate(b, opts);
         const double exact = kernel_harmonic(b.config, 1.3);
         ok = std::fabs(e.value / exact - 1.0) < 1e-12 && e.std_error == 0.0;
         return fmt("K / K_exact - 1 = %.3g, error %.3g", e.value / exact - 1.0, e.std_error);
       }},
      {"linear subtracted by itself: K = K_linear with zero error",
       [&](bool& ok) {
         const Bundle b = validated(small_config(4.0, seed), PotentialSpec::linear(0.7),
                                    BackgroundSpec::linear({0.7}), MethodSpec::Subtracted);
         const auto e = estimate(b, opts);
         const double exact = kernel_linear(b.config, 0.7);
         ok = std::fabs(e.value / exact - 1.0) < 1e-12 && e.std_error == 0.0;
         return fmt("K / K_exact - 1 = %.3g, error %.3g", e.value / exact - 1.0, e.std_error);
       }},
      {"harmonic compensated by itself: K = K_harmonic with zero error",
       [&](bool& ok) {
         const Bundle b = validated(small_config(5.0, seed), PotentialSpec::harmonic(0.8),
                                    BackgroundSpec::harmonic({0.8}), MethodSpec::Compensated);
         const auto e = estimate(b, opts);
         const double exact = kernel_harmonic(b.config, 0.8);
         ok = std::fabs(e.value / exact - 1.0) < 1e-10 && e.std_error <= 1e-10 * e.value;
         return fmt("K / K_exact - 1 = %.3g, error %.3g", e.value / exact - 1.0, e.std_error);
       }},
      {"plain HO estimate within 5 sigma of the exact kernel",
       [&](bool& ok) {
         const Bundle b = validated(small_config(1.0, seed), PotentialSpec::harmonic(1.0), BackgroundSpec::none(),
                                    MethodSpec::Plain);
         const auto e = estimate(b, opts);
         const double z = std::fabs(e.value - kernel_harmonic(b.config, 1.0)) / e.std_error;
         ok = z < 5.0;
         return fmt("K = %.6g, |K - K_exact| = %.2f sigma", e.value, z);
       }},
      {"covariance oracle: free bridge variance u(1 - u)",
       [&](bool& ok) {
         const auto o = covariance_oracle(0.0, 0.0, 16);
         double worst = 0.0;
         for (std::size_t i = 1; i < 16; ++i) {
           const double u = i / 16.0;
           worst = std::max(worst, std::fabs(o.cov(i, i) - u * (1.0 - u)));
         }
         ok = worst < 1e-12;
         return fmt("largest deviation %.3g (of %g)", worst, 0.0);
       }},
      {"sampling independent of worker count",
       [&](bool& ok) {
         const Bundle b = validated(small_config(2.0, seed), PotentialSpec::harmonic(1.0), BackgroundSpec::none(),
                                    MethodSpec::Plain);
         const auto a = sample_wilson_lines(b, WilsonKind::Raw, SamplingOptions{1});
         const auto c = sample_wilson_lines(b, WilsonKind::Raw, SamplingOptions{3});
         ok = a.values == c.values;
         return fmt("%g of %g values differ", ok ? 0.0 : 1.0, static_cast<double>(a.values.size()));
       }},
  };
  int failed = 0;
  for (const auto& c : checks) {
    bool ok = false;
    std::string detail;
    try {
      detail = c.run(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    failed += ok ? 0 : 1;
    out << (ok ? "ok    " : "FAIL  ") << c.name << "  (" << detail << ")\n";
  }
  out << (failed == 0 ? "selfcheck passed\n" : "selfcheck failed: " + std::to_string(failed) + " check(s)\n");
  return failed == 0 ? kOk : kSelfcheckFailed;
}

}  // namespace wmc::cli
