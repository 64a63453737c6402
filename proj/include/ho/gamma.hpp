#pragma once

#include <complex>

namespace ho {

using Cplx = std::complex<double>;

// Principal-branch log Gamma, Lanczos approximation with reflection for
// Re z < 1/2. Relative accuracy ~1e-13 for |z| <= 50 away from the poles.
// The imaginary part may differ from the principal branch by a multiple of
// 2*pi after reflection; exp(log_gamma(z)) is always Gamma(z).
Cplx log_gamma(Cplx z);

Cplx gamma_fn(Cplx z);

// d/dx (1/Gamma) at the nonpositive integer -n: (-1)^n * n!
double recip_gamma_deriv_at(long n);

// log |(-1)^n n!| and its sign, for large n
void recip_gamma_deriv_log(long n, double& log_mag, int& sign);

}  // namespace ho
