#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmc/error.hpp"

namespace wmc {

// Units: hbar = 1. Mass is kept explicit everywhere.
struct SimConfig {
  double mass = 1.0;
  int dimension = 1;
  std::vector<double> x_start{0.0};
  std::vector<double> x_end{0.0};
  double time = 1.0;
  std::int64_t n_paths = 1000;
  std::int64_t n_points = 1000;
  std::uint64_t seed = 1;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class BackgroundKind { None, Harmonic, Linear };

// Auxiliary potential used only to shape the sampling distribution.
//   Harmonic: U(x) = sum_j m Omega_j^2 (x_j - c_j)^2 / 2
//   Linear:   U(x) = sum_j kappa_j x_j
struct BackgroundSpec {
  BackgroundKind kind = BackgroundKind::None;
  std::vector<double> omega;   // per axis, Harmonic only
  std::vector<double> center;  // per axis, Harmonic only
  std::vector<double> kappa;   // per axis, Linear only

  static BackgroundSpec none() { return {}; }
  static BackgroundSpec harmonic(std::vector<double> omega,
                                 std::vector<double> center = {});
  static BackgroundSpec linear(std::vector<double> kappa);

  friend bool operator==(const BackgroundSpec&, const BackgroundSpec&) = default;
};

enum class PotentialKind { Free, Harmonic, Linear, PoschlTeller, AbsoluteValue };

// Physical potential V(x). For D > 1: Harmonic is m w^2 |x|^2 / 2, Linear is
// k * sum_j x_j, PoschlTeller and AbsoluteValue act on the Euclidean norm |x|.
// The absolute-value strength `g` is the coefficient in V(x) = g|x|.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::Free;
  double omega = 0.0;   // Harmonic
  double k = 0.0;       // Linear
  double alpha = 0.0;   // PoschlTeller inverse width
  int lambda = 1;       // PoschlTeller
  double g = 0.0;       // AbsoluteValue

  static PotentialSpec free() { return {}; }
  static PotentialSpec harmonic(double omega);
  static PotentialSpec linear(double k);
  static PotentialSpec poschl_teller(double alpha, int lambda = 1);
  static PotentialSpec absolute_value(double g);

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

enum class MethodSpec { Plain, Compensated, Subtracted };

std::string to_string(BackgroundKind kind);
std::string to_string(PotentialKind kind);
std::string to_string(MethodSpec method);

struct Bundle {
  SimConfig config;
  PotentialSpec potential;
  BackgroundSpec background;
  MethodSpec method = MethodSpec::Plain;

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

struct ConfigIssue {
  ErrorCode code;
  std::string field;   // offending field or rule name
  std::string reason;
};

struct ValidationResult {
  std::optional<Bundle> bundle;
  std::vector<ConfigIssue> issues;

  bool ok() const { return bundle.has_value(); }
};

// Checks every type invariant and the method compatibility rule. All
// violations are reported, one issue per field or rule.
ValidationResult validate(const SimConfig& config, const PotentialSpec& potential,
                          const BackgroundSpec& background, MethodSpec method);

inline ValidationResult validate(const Bundle& b) {
  return validate(b.config, b.potential, b.background, b.method);
}

// Like validate(), but throws wmc::Error carrying the first issue.
Bundle validated(const SimConfig& config, const PotentialSpec& potential,
                 const BackgroundSpec& background, MethodSpec method);

// Background parameter for axis j; scalar lists broadcast to every axis.
double background_omega(const BackgroundSpec& bg, int axis);
double background_center(const BackgroundSpec& bg, int axis);
double background_kappa(const BackgroundSpec& bg, int axis);

}  // namespace wmc
