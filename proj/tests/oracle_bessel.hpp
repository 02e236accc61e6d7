#pragma once

// Quad-precision series oracle for J0, J1, Y0, Y1, independent of the library
// implementation. Power/log series only, evaluated in __float128 so that
// cancellation (worst near x = 50, amplification ~ e^x/x) still leaves about
// 1e-14 absolute accuracy. Test-only code.

namespace oracle {

double j0(double x);
double j1(double x);
double y0(double x);
double y1(double x);

}  // namespace oracle
