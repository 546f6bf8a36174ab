#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "wmc/error.hpp"

namespace {

using namespace wmc::cli;

struct Shared {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
};

void add_shared(CLI::App* sub, Shared& s, bool config_required) {
  auto* opt = sub->add_option("--config", s.config_path, "run file (key = value) or a manifest written by wmc");
  if (config_required) opt->required();
  sub->add_option("--seed", s.seed, "override the configured seed");
  sub->add_option("--workers", s.workers, "worker threads (default: config, else one per core)");
  sub->add_option("--out", s.out_dir, "output directory (default: config output_dir, else .)");
}

Context context(const Shared& s) {
  RunConfig rc = s.config_path.empty() ? RunConfig{} : load_run_config(s.config_path);
  return make_context(std::move(rc), Overrides{s.seed, s.workers, s.out_dir});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo propagators from Wilson-line sampling"};
  app.require_subcommand(1);
  Shared s;

  auto* est = app.add_subcommand("estimate", "one kernel estimate as a JSON line");
  add_shared(est, s, true);
  auto* swp = app.add_subcommand("sweep", "kernel estimates over t_grid, written to sweep.csv");
  add_shared(swp, s, true);
  auto* pap = app.add_subcommand("pap-hist", "Wilson-line histogram against the analytic PAP, with a KS test");
  add_shared(pap, s, true);
  std::optional<int> bins;
  double alpha = 0.01;
  pap->add_option("--bins", bins, "histogram bins (default 200)");
  pap->add_option("--alpha", alpha, "KS significance level")->check(CLI::Range(1e-12, 0.5));
  auto* fit = app.add_subcommand("fit-energy", "ground-state energy from a sweep table");
  add_shared(fit, s, false);
  std::string table, window;
  fit->add_option("--table", table, "sweep CSV");
  fit->add_option("--window", window, "fit window t_min:t_max");
  auto* self = app.add_subcommand("selfcheck", "zero-variance and oracle invariants");
  add_shared(self, s, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    Context ctx = context(s);
    const auto& args = ctx.config.arguments;
    auto recorded = [&](const char* key) { return args.count(key) ? args.at(key) : std::string(); };
    if (*est) return run_estimate(ctx, std::cout);
    if (*swp) return run_sweep(ctx, std::cout);
    if (*pap) {
      int n = bins ? *bins : (args.count("bins") ? std::stoi(args.at("bins")) : 200);
      if (pap->count("--alpha") == 0 && args.count("alpha")) alpha = std::stod(args.at("alpha"));
      return run_pap_hist(ctx, n, alpha, std::cout);
    }
    if (*fit) {
      if (table.empty()) table = recorded("table");
      if (window.empty()) window = recorded("window");
      if (table.empty()) throw wmc::Error(wmc::ErrorCode::ConfigError, "--table: required");
      if (window.empty()) throw wmc::Error(wmc::ErrorCode::ConfigError, "--window: required");
      return run_fit_energy(ctx, table, window, std::cout);
    }
    if (*self) return run_selfcheck(ctx, std::cout);
  } catch (const wmc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kConfigError;
}
