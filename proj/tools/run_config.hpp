#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmc/model.hpp"

namespace wmc::cli {

// A parsed `key = value` run file. `entries` keeps the resolved value of
// every key so a manifest can echo and replay it.
struct RunConfig {
  Bundle bundle;
  bool has_time = false;
  std::optional<std::string> t_grid;
  int workers = 0;  // 0: one per hardware thread
  std::string output_dir = ".";
  std::map<std::string, std::string> entries;
  // Subcommand options recorded in a manifest (e.g. bins, table, window).
  std::map<std::string, std::string> arguments;
};

// Throws Error(ConfigError) naming the offending key and line. Does not
// run the model validator.
RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_text(const std::string& text);

// Reads a run file, or the `config` object of a manifest written by this tool.
RunConfig load_run_config(const std::string& path);

// Canonical `key = value` text for the resolved configuration.
std::string render_run_config(const RunConfig& config);

std::vector<std::string> known_keys();

}  // namespace wmc::cli
