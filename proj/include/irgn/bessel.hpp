#pragma once

namespace irgn {

// Modified Bessel function of the second kind K_nu(x) for real order
// nu >= 0 and x > 0. Relative accuracy is ~1e-13 over nu in (0,10],
// x in [1e-6, 50]. Throws std::domain_error for x <= 0 or nu < 0; returns
// +infinity when the value saturates the double range (tiny x, large nu).
double bessel_k(double nu, double x);

}  // namespace irgn
