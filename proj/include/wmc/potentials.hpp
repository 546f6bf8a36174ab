#pragma once

#include <span>

#include "wmc/model.hpp"

namespace wmc {

// V(x) for the built-in potentials:
//   Harmonic       m w^2 |x|^2 / 2
//   Linear         k sum_j x_j
//   PoschlTeller   -(a^2 / 2m) l(l+1) / cosh^2(a |x|)
//   AbsoluteValue  g |x|
double evaluate(const PotentialSpec& potential, std::span<const double> point, double mass);

// U(x) for the sampling background; 0 for BackgroundKind::None.
double evaluate_background(const BackgroundSpec& background, std::span<const double> point,
                           double mass);

// 1 / cosh^2(z) without overflow for large |z|.
double sech_squared(double z);

}  // namespace wmc
