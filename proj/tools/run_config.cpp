#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wmc/csv.hpp"
#include "wmc/error.hpp"

namespace wmc::cli {

namespace {

const std::vector<std::string> kKeys = {
    "mass",           "dimension",         "x_start",          "x_end",           "time",
    "t_grid",         "n_paths",           "n_points",         "seed",            "potential",
    "potential.omega", "potential.k",      "potential.alpha",  "potential.lambda", "potential.g",
    "background",     "background.omega",  "background.center", "background.kappa", "method",
    "workers",        "output_dir",
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& reason) {
  throw Error(ErrorCode::ConfigError, key + ": " + reason);
}

double to_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(key, "expected a real number, got '" + v + "'");
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) fail(key, "expected an integer, got '" + v + "'");
  return out;
}

std::vector<double> to_reals(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real(key, trim(item)));
  if (out.empty()) fail(key, "expected a comma-separated list of reals");
  return out;
}

PotentialKind potential_kind(const std::string& v) {
  if (v == "free") return PotentialKind::Free;
  if (v == "harmonic") return PotentialKind::Harmonic;
  if (v == "linear") return PotentialKind::Linear;
  if (v == "poschl_teller") return PotentialKind::PoschlTeller;
  if (v == "absolute") return PotentialKind::AbsoluteValue;
  fail("potential", "expected free|harmonic|linear|poschl_teller|absolute, got '" + v + "'");
}

BackgroundKind background_kind(const std::string& v) {
  if (v == "none") return BackgroundKind::None;
  if (v == "harmonic") return BackgroundKind::Harmonic;
  if (v == "linear") return BackgroundKind::Linear;
  fail("background", "expected none|harmonic|linear, got '" + v + "'");
}

MethodSpec method_kind(const std::string& v) {
  if (v == "plain") return MethodSpec::Plain;
  if (v == "compensated") return MethodSpec::Compensated;
  if (v == "subtracted") return MethodSpec::Subtracted;
  fail("method", "expected plain|compensated|subtracted, got '" + v + "'");
}

// Keys whose parameters belong to one potential / background kind.
const std::map<std::string, PotentialKind> kPotentialParam = {
    {"potential.omega", PotentialKind::Harmonic},     {"potential.k", PotentialKind::Linear},
    {"potential.alpha", PotentialKind::PoschlTeller}, {"potential.lambda", PotentialKind::PoschlTeller},
    {"potential.g", PotentialKind::AbsoluteValue},
};

RunConfig build(const std::map<std::string, std::string>& kv) {
  RunConfig rc;
  rc.entries = kv;
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  SimConfig& c = rc.bundle.config;
  if (auto* v = get("mass")) c.mass = to_real("mass", *v);
  if (auto* v = get("dimension")) c.dimension = to_int<int>("dimension", *v);
  const auto zeros = std::vector<double>(static_cast<std::size_t>(std::max(c.dimension, 1)), 0.0);
  c.x_start = get("x_start") ? to_reals("x_start", *get("x_start")) : zeros;
  c.x_end = get("x_end") ? to_reals("x_end", *get("x_end")) : zeros;
  if (get("time") && get("t_grid")) fail("time", "give either time or t_grid, not both");
  if (auto* v = get("time")) {
    c.time = to_real("time", *v);
    rc.has_time = true;
  }
  if (auto* v = get("t_grid")) rc.t_grid = *v;
  if (auto* v = get("n_paths")) c.n_paths = to_int<std::int64_t>("n_paths", *v);
  if (auto* v = get("n_points")) c.n_points = to_int<std::int64_t>("n_points", *v);
  if (auto* v = get("seed")) c.seed = to_int<std::uint64_t>("seed", *v);

  PotentialSpec& p = rc.bundle.potential;
  p.kind = get("potential") ? potential_kind(*get("potential")) : PotentialKind::Free;
  for (const auto& [key, kind] : kPotentialParam)
    if (get(key) && kind != p.kind) fail(key, "not a parameter of potential = " + to_string(p.kind));
  if (auto* v = get("potential.omega")) p.omega = to_real("potential.omega", *v);
  if (auto* v = get("potential.k")) p.k = to_real("potential.k", *v);
  if (auto* v = get("potential.alpha")) p.alpha = to_real("potential.alpha", *v);
  if (auto* v = get("potential.lambda")) p.lambda = to_int<int>("potential.lambda", *v);
  if (auto* v = get("potential.g")) p.g = to_real("potential.g", *v);

  BackgroundSpec& bg = rc.bundle.background;
  bg.kind = get("background") ? background_kind(*get("background")) : BackgroundKind::None;
  if (auto* v = get("background.omega")) bg.omega = to_reals("background.omega", *v);
  if (auto* v = get("background.center")) bg.center = to_reals("background.center", *v);
  if (auto* v = get("background.kappa")) bg.kappa = to_reals("background.kappa", *v);

  rc.bundle.method = get("method") ? method_kind(*get("method")) : MethodSpec::Plain;
  if (auto* v = get("workers")) {
    rc.workers = to_int<int>("workers", *v);
    if (rc.workers < 1) fail("workers", "must be >= 1");
  }
  if (auto* v = get("output_dir")) rc.output_dir = *v;
  return rc;
}

}  // namespace

std::vector<std::string> known_keys() { return kKeys; }

RunConfig parse_run_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos) fail(where, "expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) fail(key, "unknown key (" + where + ")");
    if (value.empty()) fail(key, "missing value (" + where + ")");
    if (!kv.emplace(key, value).second) fail(key, "given twice (" + where + ")");
  }
  return build(kv);
}

RunConfig parse_run_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("--config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json manifest;
    try {
      manifest = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail("--config", std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!manifest.contains("config") || !manifest["config"].is_object())
      fail("--config", "manifest has no `config` object");
    auto as_text = [](const std::string& key, const nlohmann::json& value) {
      if (!value.is_string()) fail(key, "manifest values must be strings");
      return value.get<std::string>();
    };
    std::string kv;
    for (const auto& [key, value] : manifest["config"].items()) kv += key + " = " + as_text(key, value) + "\n";
    RunConfig rc = parse_run_config_text(kv);
    if (manifest.contains("arguments") && manifest["arguments"].is_object())
      for (const auto& [key, value] : manifest["arguments"].items()) rc.arguments[key] = as_text(key, value);
    return rc;
  }
  return parse_run_config_text(text);
}

std::string render_run_config(const RunConfig& rc) {
  std::string out;
  for (const auto& key : kKeys) {
    const auto it = rc.entries.find(key);
    if (it != rc.entries.end()) out += key + " = " + it->second + "\n";
  }
  return out;
}

}  // namespace wmc::cli
