#include "irgn/matern.hpp"

#include <cmath>
#include <stdexcept>

#include "irgn/bessel.hpp"

namespace irgn {

MaternParams MaternParams::make(double nu, double ell, double c0) {
  if (!(nu > 0.0)) throw std::invalid_argument("MaternParams: nu must be positive");
  if (!(ell > 0.0)) throw std::invalid_argument("MaternParams: ell must be positive");
  if (!(c0 > 0.0)) throw std::invalid_argument("MaternParams: c0 must be positive");
  return MaternParams{nu, ell, c0};
}

double matern_kernel(const MaternParams& params, double r) {
  if (r < 0.0) throw std::invalid_argument("matern_kernel: negative distance");
  const double t = r / params.ell;
  // t^nu * K_nu(t) -> Gamma(nu) 2^(nu-1) as t -> 0; below ~1e-8 the deviation
  // is under double precision for any nu > 0 we care about.
  if (t < 1e-8) return params.c0;
  const double pref = std::pow(2.0, 1.0 - params.nu) / std::tgamma(params.nu);
  const double k = bessel_k(params.nu, t);
  if (k == 0.0) return 0.0;  // far field underflow
  return params.c0 * pref * std::pow(t, params.nu) * k;
}

}  // namespace irgn
