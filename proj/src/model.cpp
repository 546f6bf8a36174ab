#include "wmc/model.hpp"

#include <algorithm>
#include <cmath>

namespace wmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IncompatibleMethod: return "IncompatibleMethod";
    case ErrorCode::SubtractionWithoutBackground: return "SubtractionWithoutBackground";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::UnsupportedLambda: return "UnsupportedLambda";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::SingularPrecision: return "SingularPrecision";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::EmptySampleSet: return "EmptySampleSet";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

BackgroundSpec BackgroundSpec::harmonic(std::vector<double> omega,
                                        std::vector<double> center) {
  BackgroundSpec bg;
  bg.kind = BackgroundKind::Harmonic;
  bg.omega = std::move(omega);
  bg.center = std::move(center);
  return bg;
}

BackgroundSpec BackgroundSpec::linear(std::vector<double> kappa) {
  BackgroundSpec bg;
  bg.kind = BackgroundKind::Linear;
  bg.kappa = std::move(kappa);
  return bg;
}

PotentialSpec PotentialSpec::harmonic(double omega) {
  PotentialSpec p;
  p.kind = PotentialKind::Harmonic;
  p.omega = omega;
  return p;
}

PotentialSpec PotentialSpec::linear(double k) {
  PotentialSpec p;
  p.kind = PotentialKind::Linear;
  p.k = k;
  return p;
}

PotentialSpec PotentialSpec::poschl_teller(double alpha, int lambda) {
  PotentialSpec p;
  p.kind = PotentialKind::PoschlTeller;
  p.alpha = alpha;
  p.lambda = lambda;
  return p;
}

PotentialSpec PotentialSpec::absolute_value(double g) {
  PotentialSpec p;
  p.kind = PotentialKind::AbsoluteValue;
  p.g = g;
  return p;
}

std::string to_string(BackgroundKind kind) {
  switch (kind) {
    case BackgroundKind::None: return "none";
    case BackgroundKind::Harmonic: return "harmonic";
    case BackgroundKind::Linear: return "linear";
  }
  return "unknown";
}

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Free: return "free";
    case PotentialKind::Harmonic: return "harmonic";
    case PotentialKind::Linear: return "linear";
    case PotentialKind::PoschlTeller: return "poschl_teller";
    case PotentialKind::AbsoluteValue: return "absolute";
  }
  return "unknown";
}

std::string to_string(MethodSpec method) {
  switch (method) {
    case MethodSpec::Plain: return "plain";
    case MethodSpec::Compensated: return "compensated";
    case MethodSpec::Subtracted: return "subtracted";
  }
  return "unknown";
}

namespace {

double pick(const std::vector<double>& values, int axis, double fallback) {
  if (values.empty()) return fallback;
  if (values.size() == 1) return values.front();
  return values.at(static_cast<std::size_t>(axis));
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool is_uniform(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

class IssueList {
 public:
  void invalid(std::string field, std::string reason) {
    issues.push_back({ErrorCode::InvalidParameter, std::move(field), std::move(reason)});
  }
  void add(ErrorCode code, std::string field, std::string reason) {
    issues.push_back({code, std::move(field), std::move(reason)});
  }
  std::vector<ConfigIssue> issues;
};

void check_config(const SimConfig& c, IssueList& out) {
  if (!(c.mass > 0.0) || !std::isfinite(c.mass)) out.invalid("mass", "must be a finite positive number");
  if (!(c.time > 0.0) || !std::isfinite(c.time)) out.invalid("time", "must be a finite positive number");
  if (c.n_paths < 1) out.invalid("n_paths", "must be >= 1");
  if (c.n_points < 2) out.invalid("n_points", "must be >= 2");
  if (c.dimension < 1) {
    out.invalid("dimension", "must be >= 1");
    return;
  }
  const auto d = static_cast<std::size_t>(c.dimension);
  if (c.x_start.size() != d || !all_finite(c.x_start))
    out.invalid("x_start", "must hold `dimension` finite coordinates");
  if (c.x_end.size() != d || !all_finite(c.x_end))
    out.invalid("x_end", "must hold `dimension` finite coordinates");
}

void check_potential(const PotentialSpec& p, IssueList& out) {
  switch (p.kind) {
    case PotentialKind::Free:
      break;
    case PotentialKind::Harmonic:
      if (!(p.omega > 0.0) || !std::isfinite(p.omega)) out.invalid("potential.omega", "must be positive");
      break;
    case PotentialKind::Linear:
      if (!std::isfinite(p.k)) out.invalid("potential.k", "must be finite");
      break;
    case PotentialKind::PoschlTeller:
      if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) out.invalid("potential.alpha", "must be positive");
      if (p.lambda < 1) out.invalid("potential.lambda", "must be a positive integer");
      break;
    case PotentialKind::AbsoluteValue:
      if (!(p.g > 0.0) || !std::isfinite(p.g)) out.invalid("potential.g", "must be positive");
      break;
  }
}

bool length_ok(const std::vector<double>& v, int dim, bool required) {
  if (v.empty()) return !required;
  return v.size() == 1 || v.size() == static_cast<std::size_t>(dim);
}

void check_background(const BackgroundSpec& bg, int dim, IssueList& out) {
  switch (bg.kind) {
    case BackgroundKind::None:
      if (!bg.omega.empty() || !bg.center.empty() || !bg.kappa.empty())
        out.invalid("background", "parameters given but background = none");
      break;
    case BackgroundKind::Harmonic:
      if (!length_ok(bg.omega, dim, true) || !all_finite(bg.omega) ||
          !std::all_of(bg.omega.begin(), bg.omega.end(), [](double w) { return w > 0.0; }))
        out.invalid("background.omega", "needs 1 or `dimension` positive frequencies");
      if (!length_ok(bg.center, dim, false) || !all_finite(bg.center))
        out.invalid("background.center", "needs 0, 1 or `dimension` finite coordinates");
      if (!bg.kappa.empty()) out.invalid("background.kappa", "only valid for a linear background");
      break;
    case BackgroundKind::Linear:
      if (!length_ok(bg.kappa, dim, true) || !all_finite(bg.kappa))
        out.invalid("background.kappa", "needs 1 or `dimension` finite slopes");
      if (!bg.omega.empty()) out.invalid("background.omega", "only valid for a harmonic background");
      if (!bg.center.empty()) out.invalid("background.center", "only valid for a harmonic background");
      break;
  }
}

void check_method(const PotentialSpec& p, const BackgroundSpec& bg, MethodSpec m,
                  IssueList& out) {
  if (m == MethodSpec::Subtracted && bg.kind == BackgroundKind::None) {
    out.add(ErrorCode::SubtractionWithoutBackground, "method",
            "subtracted method needs a harmonic or linear background");
    return;
  }
  if (m != MethodSpec::Compensated) return;
  const bool hh = p.kind == PotentialKind::Harmonic && bg.kind == BackgroundKind::Harmonic;
  const bool ll = p.kind == PotentialKind::Linear && bg.kind == BackgroundKind::Linear;
  if (!hh && !ll) {
    out.add(ErrorCode::IncompatibleMethod, "method",
            "compensated method needs (harmonic, harmonic) or (linear, linear); got (" +
                to_string(p.kind) + ", " + to_string(bg.kind) + ")");
    return;
  }
  if (hh) {
    if (!is_uniform(bg.omega))
      out.add(ErrorCode::IncompatibleMethod, "background.omega",
              "compensation needs the same frequency on every axis");
    if (!std::all_of(bg.center.begin(), bg.center.end(), [](double c) { return c == 0.0; }))
      out.add(ErrorCode::IncompatibleMethod, "background.center",
              "compensation needs the background centered on the potential minimum (0)");
  }
  if (ll) {
    if (!is_uniform(bg.kappa))
      out.add(ErrorCode::IncompatibleMethod, "background.kappa",
              "compensation needs the same slope on every axis");
    if (p.k == 0.0)
      out.add(ErrorCode::IncompatibleMethod, "potential.k",
              "compensation factor is undefined for k = 0");
  }
}

}  // namespace

ValidationResult validate(const SimConfig& config, const PotentialSpec& potential,
                          const BackgroundSpec& background, MethodSpec method) {
  IssueList issues;
  check_config(config, issues);
  check_potential(potential, issues);
  check_background(background, std::max(config.dimension, 1), issues);
  check_method(potential, background, method, issues);
  ValidationResult result;
  result.issues = std::move(issues.issues);
  if (result.issues.empty()) result.bundle = Bundle{config, potential, background, method};
  return result;
}

Bundle validated(const SimConfig& config, const PotentialSpec& potential,
                 const BackgroundSpec& background, MethodSpec method) {
  auto result = validate(config, potential, background, method);
  if (!result.ok()) {
    const auto& first = result.issues.front();
    throw Error(first.code, first.field + ": " + first.reason);
  }
  return *result.bundle;
}

double background_omega(const BackgroundSpec& bg, int axis) { return pick(bg.omega, axis, 0.0); }
double background_center(const BackgroundSpec& bg, int axis) { return pick(bg.center, axis, 0.0); }
double background_kappa(const BackgroundSpec& bg, int axis) { return pick(bg.kappa, axis, 0.0); }

}  // namespace wmc
