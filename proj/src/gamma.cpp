#include "ho/gamma.hpp"

#include <cmath>

#include "ho/errors.hpp"

namespace ho {

namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

const double kLogSqrt2Pi = 0.91893853320467274178;

Cplx lanczos_log_gamma(Cplx z) {
  // valid for Re z >= 1/2
  Cplx zm1 = z - 1.0;
  Cplx s = kLanczos[0];
  for (int i = 1; i < 15; ++i) s += kLanczos[i] / (zm1 + static_cast<double>(i));
  Cplx t = zm1 + kLanczosG + 0.5;
  return kLogSqrt2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace

Cplx log_gamma(Cplx z) {
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  // pole guard
  double r = std::round(z.real());
  if (r <= 0.0 && std::abs(z.real() - r) < 1e-300 && std::abs(z.imag()) < 1e-300)
    fail(Errc::PoleAtNonpositiveInteger, "log_gamma at nonpositive integer");
  // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
  const double pi = 3.14159265358979323846;
  Cplx log_sin;
  if (std::abs(z.imag()) < 100.0) {
    log_sin = std::log(std::sin(pi * z));
  } else {
    // sin(pi z) = -e^{-i pi z}(1 - e^{2 i pi z}) / (2 i), stable for Im z > 0
    const Cplx I(0.0, 1.0);
    if (z.imag() > 0)
      log_sin = -I * pi * z + std::log(1.0 - std::exp(2.0 * I * pi * z)) + std::log(I / 2.0);
    else
      log_sin = I * pi * z + std::log(1.0 - std::exp(-2.0 * I * pi * z)) + std::log(-I / 2.0);
  }
  return std::log(Cplx(pi)) - log_sin - lanczos_log_gamma(1.0 - z);
}

Cplx gamma_fn(Cplx z) { return std::exp(log_gamma(z)); }

double recip_gamma_deriv_at(long n) {
  if (n < 0) fail(Errc::InvalidArgument, "recip_gamma_deriv_at needs n >= 0");
  if (n > 170) fail(Errc::InvalidArgument, "factorial overflow in recip_gamma_deriv_at");
  double f = 1.0;
  for (long i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return (n % 2 == 0) ? f : -f;
}

void recip_gamma_deriv_log(long n, double& log_mag, int& sign) {
  log_mag = std::lgamma(static_cast<double>(n) + 1.0);
  sign = (n % 2 == 0) ? 1 : -1;
}

}  // namespace ho
