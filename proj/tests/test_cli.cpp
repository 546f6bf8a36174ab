#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "run_config.hpp"

using namespace wmc;
using namespace wmc::cli;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    (void)parse_run_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a ConfigError for: " << text);
  return ErrorCode::InvalidParameter;
}

std::string message_of(const std::string& text) {
  try {
    (void)parse_run_config_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("run file: every documented key parses") {
  const auto rc = parse_run_config_text(
      "mass = 2\n"
      "dimension = 2\n"
      "x_start = 0.5, -1\n"
      "x_end = 0,0\n"
      "time = 3.5   # trailing comment\n"
      "n_paths = 123\n"
      "n_points = 45\n"
      "seed = 18446744073709551615\n"
      "potential = harmonic\n"
      "potential.omega = 1.25\n"
      "background = harmonic\n"
      "background.omega = 0.5, 0.75\n"
      "background.center = 0\n"
      "method = subtracted\n"
      "workers = 2\n"
      "output_dir = results\n");
  const auto& c = rc.bundle.config;
  CHECK(c.mass == 2.0);
  CHECK(c.dimension == 2);
  CHECK(c.x_start == std::vector<double>{0.5, -1.0});
  CHECK(c.x_end == std::vector<double>{0.0, 0.0});
  CHECK(c.time == 3.5);
  CHECK(rc.has_time);
  CHECK(c.n_paths == 123);
  CHECK(c.n_points == 45);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(rc.bundle.potential.kind == PotentialKind::Harmonic);
  CHECK(rc.bundle.potential.omega == 1.25);
  CHECK(rc.bundle.background.kind == BackgroundKind::Harmonic);
  CHECK(rc.bundle.background.omega == std::vector<double>{0.5, 0.75});
  CHECK(rc.bundle.method == MethodSpec::Subtracted);
  CHECK(rc.workers == 2);
  CHECK(rc.output_dir == "results");
  CHECK_NOTHROW(validated(c, rc.bundle.potential, rc.bundle.background, rc.bundle.method));
}

TEST_CASE("run file: defaults match the model defaults") {
  const auto rc = parse_run_config_text("");
  CHECK(rc.bundle == Bundle{});
  CHECK_FALSE(rc.t_grid);
}

TEST_CASE("run file: potential kinds and their parameters") {
  CHECK(parse_run_config_text("potential = linear\npotential.k = 0.5").bundle.potential == PotentialSpec::linear(0.5));
  CHECK(parse_run_config_text("potential = poschl_teller\npotential.alpha = 2\npotential.lambda = 3")
            .bundle.potential == PotentialSpec::poschl_teller(2.0, 3));
  CHECK(parse_run_config_text("potential = absolute\npotential.g = 0.5").bundle.potential ==
        PotentialSpec::absolute_value(0.5));
  CHECK(parse_run_config_text("potential = free").bundle.potential == PotentialSpec::free());
  CHECK(parse_run_config_text("background = linear\nbackground.kappa = 0.45").bundle.background ==
        BackgroundSpec::linear({0.45}));
}

TEST_CASE("run file: errors name the key") {
  CHECK(code_of("bogus = 1") == ErrorCode::ConfigError);
  CHECK(message_of("bogus = 1").find("bogus") != std::string::npos);
  CHECK(message_of("time = 1\ntime = 2").find("time") != std::string::npos);
  CHECK(message_of("time = abc").find("time") != std::string::npos);
  CHECK(message_of("time = 1.5x").find("time") != std::string::npos);
  CHECK(message_of("n_paths = 1.5").find("n_paths") != std::string::npos);
  CHECK(message_of("potential = cubic").find("potential") != std::string::npos);
  CHECK(message_of("background = quartic").find("background") != std::string::npos);
  CHECK(message_of("method = magic").find("method") != std::string::npos);
  CHECK(message_of("potential = harmonic\npotential.k = 1").find("potential.k") != std::string::npos);
  CHECK(message_of("time = 1\nt_grid = 1:2:3").find("time") != std::string::npos);
  CHECK(message_of("just words").find("line 1") != std::string::npos);
  CHECK(message_of("time =").find("time") != std::string::npos);
  CHECK(message_of("workers = 0").find("workers") != std::string::npos);
}

TEST_CASE("run file: render round-trips") {
  const std::string text = "time = 2\npotential = linear\npotential.k = 0.25\nseed = 9\nn_paths = 10\n";
  const auto a = parse_run_config_text(text);
  const auto b = parse_run_config_text(render_run_config(a));
  CHECK(a.bundle == b.bundle);
  CHECK(a.entries == b.entries);
}

TEST_CASE("exit codes separate configuration from numerical failures") {
  CHECK(exit_code_for(ErrorCode::ConfigError) == kConfigError);
  CHECK(exit_code_for(ErrorCode::InvalidParameter) == kConfigError);
  CHECK(exit_code_for(ErrorCode::SubtractionWithoutBackground) == kConfigError);
  CHECK(exit_code_for(ErrorCode::UnsupportedPair) == kConfigError);
  CHECK(exit_code_for(ErrorCode::InsufficientRows) == kNumericalError);
  CHECK(exit_code_for(ErrorCode::RootNotBracketed) == kNumericalError);
  CHECK(exit_code_for(ErrorCode::EmptySampleSet) == kNumericalError);
}

TEST_CASE("manifest replays the configuration and arguments") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wmc_test_cli_manifest";
  fs::remove_all(dir);
  auto rc = parse_run_config_text("time = 1.5\npotential = harmonic\npotential.omega = 1\nn_paths = 200\nn_points = 40\n");
  Context ctx = make_context(rc, Overrides{77, 1, dir.string()});
  CHECK(ctx.config.entries.at("seed") == "77");
  std::ostringstream first;
  REQUIRE(run_pap_hist(ctx, 20, 0.01, first) == kOk);

  const auto replay = load_run_config((dir / "pap-hist.manifest.json").string());
  CHECK(replay.bundle == ctx.config.bundle);
  CHECK(replay.arguments.at("bins") == "20");

  std::ifstream overlay(dir / "pap_overlay.csv");
  std::string header;
  std::getline(overlay, header);
  CHECK(header == "v,empirical_density,analytic_density");
  int lines = 0;
  for (std::string l; std::getline(overlay, l);) ++lines;
  CHECK(lines == 20);

  std::ostringstream est;
  REQUIRE(run_estimate(ctx, est) == kOk);
  CHECK(est.str().find("\"method\":\"plain\"") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("estimate output is identical for any worker count") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wmc_test_cli_workers";
  const auto rc = parse_run_config_text("time = 2\npotential = harmonic\npotential.omega = 1\nn_paths = 500\nn_points = 50\n");
  std::ostringstream a, b;
  REQUIRE(run_estimate(make_context(rc, Overrides{std::nullopt, 1, dir.string()}), a) == kOk);
  REQUIRE(run_estimate(make_context(rc, Overrides{std::nullopt, 4, dir.string()}), b) == kOk);
  CHECK(a.str() == b.str());
  fs::remove_all(dir);
}

TEST_CASE("selfcheck passes") {
  std::ostringstream out;
  const Context ctx = make_context(RunConfig{}, Overrides{std::nullopt, 2, (std::filesystem::temp_directory_path() / "wmc_sc").string()});
  CHECK(run_selfcheck(ctx, out) == kOk);
}
