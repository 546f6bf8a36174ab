#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "wmc/estimator.hpp"

namespace wmc::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericalError = 2, kSelfcheckFailed = 3 };

// Maps a library error to the CLI exit status.
int exit_code_for(ErrorCode code);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
};

struct Context {
  RunConfig config;
  int workers = 1;
  std::string out_dir = ".";
};

// Applies overrides; a seed override is folded into the config echo.
Context make_context(RunConfig config, const Overrides& overrides);

std::string to_json_line(const KernelEstimate& est);

// Each command writes its files under ctx.out_dir together with
// `<command>.manifest.json`, and prints its JSON result on `out`.
int run_estimate(const Context& ctx, std::ostream& out);
int run_sweep(const Context& ctx, std::ostream& out);
int run_pap_hist(const Context& ctx, int bins, double alpha, std::ostream& out);
int run_fit_energy(const Context& ctx, const std::string& table_path, const std::string& window, std::ostream& out);

// Zero-variance and oracle invariants; returns kOk or kSelfcheckFailed.
int run_selfcheck(const Context& ctx, std::ostream& out);

}  // namespace wmc::cli
