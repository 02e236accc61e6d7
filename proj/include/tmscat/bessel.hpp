#pragma once

#include <complex>

namespace tmscat {

/// Bessel function of the first kind, order 0 or 1, for x >= 0.
/// Absolute accuracy <= 1e-12 over [0, 50]. Throws Error on non-finite x,
/// negative x, or unsupported order.
double bessel_j(int order, double x);

/// Bessel function of the second kind, order 0 or 1, for x > 0.
/// Absolute accuracy <= 1e-10 over [1e-6, 50]. Throws Error on x <= 0,
/// non-finite x, or unsupported order.
double bessel_y(int order, double x);

/// Hankel function of the first kind: H^(1)_n(x) = J_n(x) + i Y_n(x), x > 0.
std::complex<double> hankel1(int order, double x);

}  // namespace tmscat
