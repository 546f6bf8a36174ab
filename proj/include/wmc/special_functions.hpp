#pragma once

#include <cstddef>
#include <vector>

namespace wmc::special {

// log(sinh(z)) for z > 0, stable for large z.
double log_sinh(double z);

// Airy function Ai and its derivative. Maclaurin series (in extended
// precision) for x >= -7.5, oscillatory asymptotic expansion below.
double airy_ai(double x);
double airy_ai_prime(double x);

// First `count` zeros of Ai (or Ai'), all negative, in descending order.
// Throws RootNotBracketed if the scan fails to isolate one zero per
// asymptotic estimate.
std::vector<double> airy_ai_zeros(std::size_t count);
std::vector<double> airy_ai_prime_zeros(std::size_t count);

// e^z K_nu(z) for z > 0 and non-integer nu: Bessel series of I_{-nu} - I_nu
// for small z, trapezoid rule on K_nu(z) = int_0^inf e^{-z cosh t}
// cosh(nu t) dt otherwise.
double bessel_k_scaled(double nu, double z);

}  // namespace wmc::special
