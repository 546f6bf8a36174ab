#include "wmc/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wmc/error.hpp"

namespace wmc::special {

double log_sinh(double z) {
  if (z < 1.0) return std::log(std::sinh(z));
  return z + std::log1p(-std::exp(-2.0 * z)) - std::numbers::ln2;
}

namespace {

using ld = long double;

constexpr double kSeriesLimit = -7.5;

// Ai(0) and -Ai'(0).
const ld kAi0 = 1.0L / (std::cbrt(9.0L) * std::tgamma(2.0L / 3.0L));
const ld kAip0 = 1.0L / (std::cbrt(3.0L) * std::tgamma(1.0L / 3.0L));

struct AiryPair {
  double ai;
  double aip;
};

AiryPair airy_series(double xd) {
  const ld x = xd;
  const ld x3 = x * x * x;
  ld f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
  ld t = 1.0L, s = x, u = x * x / 2.0L, w = 1.0L;
  fp = u;
  for (int k = 1; k < 200; ++k) {
    const ld kk = k;
    t *= x3 / ((3 * kk - 1) * (3 * kk));
    s *= x3 / ((3 * kk) * (3 * kk + 1));
    w *= x3 / ((3 * kk) * (3 * kk - 2));
    if (k > 1) u *= x3 / ((3 * kk - 3) * (3 * kk - 1));
    f += t;
    g += s;
    gp += w;
    if (k > 1) fp += u;
    const ld scale = std::fabs(f) + std::fabs(g) + std::fabs(fp) + std::fabs(gp);
    if (std::fabs(t) + std::fabs(s) + std::fabs(u) + std::fabs(w) < 1e-22L * scale && k > 3) break;
  }
  return {static_cast<double>(kAi0 * f - kAip0 * g), static_cast<double>(kAi0 * fp - kAip0 * gp)};
}

// Ai(-z), Ai'(-z) for large z > 0.
AiryPair airy_asymptotic_negative(double z) {
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  // u_k = Gamma(3k + 1/2) / (54^k k! Gamma(k + 1/2)), v_k = -(6k+1)/(6k-1) u_k.
  double p = 0.0, q = 0.0, pp = 0.0, qp = 0.0;
  double uk = 1.0;
  double zpow = 1.0;
  double last = INFINITY;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      const double kd = k;
      uk *= (6 * kd - 5) * (6 * kd - 3) * (6 * kd - 1) / ((2 * kd - 1) * 216.0 * kd);
      zpow /= zeta;
    }
    const double vk = k == 0 ? 1.0 : -(6.0 * k + 1) / (6.0 * k - 1) * uk;
    const double term = uk * zpow;
    if (std::fabs(term) > last) break;  // asymptotic series started diverging
    last = std::fabs(term);
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
      pp += sign * vk * zpow;
    } else {
      q += sign * term;
      qp += sign * vk * zpow;
    }
    if (term < 1e-18) break;
  }
  const double phase = zeta + std::numbers::pi / 4.0;
  const double c = std::cos(phase), s = std::sin(phase);
  const double rz = std::pow(z, 0.25);
  const double inv_sqrt_pi = std::numbers::inv_sqrtpi;
  return {inv_sqrt_pi / rz * (s * p - c * q), -inv_sqrt_pi * rz * (c * pp + s * qp)};
}

AiryPair airy(double x) {
  if (x >= kSeriesLimit) return airy_series(x);
  return airy_asymptotic_negative(-x);
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 4e-16 * std::fabs(lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Asymptotic location of the s-th zero: -T(t) with T(t) = t^{2/3}(1 + 5/48 t^-2).
double zero_estimate(double t) { return -std::pow(t, 2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t)); }

template <typename F>
std::vector<double> scan_zeros(F&& f, std::size_t count, double (*estimate)(std::size_t),
                               const char* name) {
  std::vector<double> zeros;
  const double step = 0.01;
  double x_hi = 0.0;
  double f_hi = f(x_hi);
  const double limit = estimate(count) - 2.0;
  while (zeros.size() < count && x_hi > limit) {
    const double x_lo = x_hi - step;
    const double f_lo = f(x_lo);
    if ((f_lo < 0) != (f_hi < 0)) zeros.push_back(bisect(f, x_lo, x_hi));
    x_hi = x_lo;
    f_hi = f_lo;
  }
  for (std::size_t s = 1; s <= count; ++s) {
    if (zeros.size() < s || std::fabs(zeros[s - 1] - estimate(s)) > 0.1)
      throw Error(ErrorCode::RootNotBracketed,
                  std::string(name) + " zero #" + std::to_string(s) + " not isolated by the scan");
  }
  return zeros;
}

double ai_zero_estimate(std::size_t s) {
  return zero_estimate(3.0 * std::numbers::pi * (4.0 * static_cast<double>(s) - 1.0) / 8.0);
}

double aip_zero_estimate(std::size_t s) {
  if (s == 1) return -1.0188;  // the asymptotic form is poor for the first zero
  const double t = 3.0 * std::numbers::pi * (4.0 * static_cast<double>(s) - 3.0) / 8.0;
  return -std::pow(t, 2.0 / 3.0) * (1.0 - 7.0 / 48.0 / (t * t));
}

}  // namespace

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

std::vector<double> airy_ai_zeros(std::size_t count) {
  return scan_zeros([](double x) { return airy_ai(x); }, count, ai_zero_estimate, "Ai");
}

std::vector<double> airy_ai_prime_zeros(std::size_t count) {
  return scan_zeros([](double x) { return airy_ai_prime(x); }, count, aip_zero_estimate, "Ai'");
}

namespace {

double bessel_i_series(double nu, double z) {
  const double h = 0.5 * z;
  const double h2 = h * h;
  double term = std::pow(h, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 300; ++k) {
    term *= h2 / (k * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

double bessel_k_integral_scaled(double nu, double z) {
  // Integrand e^{-z (cosh t - 1)} cosh(nu t) is even and entire, so the
  // trapezoid rule converges geometrically; h keeps ~5+ nodes per width.
  const double h = std::min(0.1, 0.5 / std::sqrt(z));
  double sum = 0.5;
  for (int j = 1; j < 100000; ++j) {
    const double t = j * h;
    const double term = std::exp(-z * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return h * sum;
}

}  // namespace

double bessel_k_scaled(double nu, double z) {
  if (!(z > 0.0)) return INFINITY;
  if (z < 0.5) {
    const double k = std::numbers::pi / (2.0 * std::sin(nu * std::numbers::pi)) *
                     (bessel_i_series(-nu, z) - bessel_i_series(nu, z));
    return std::exp(z) * k;
  }
  return bessel_k_integral_scaled(nu, z);
}

}  // namespace wmc::special
