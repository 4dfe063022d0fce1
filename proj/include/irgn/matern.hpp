#pragma once

namespace irgn {

// Matern correlation parameters: smoothness nu, length-scale ell (physical
// units), scale factor c0. The kernel is normalized so c(0) = c0.
struct MaternParams {
  double nu = 2.4;
  double ell = 15.0;
  double c0 = 1.0;

  static MaternParams make(double nu, double ell, double c0 = 1.0);
  bool operator==(const MaternParams&) const = default;
};

// c(r) = c0 * 2^(1-nu)/Gamma(nu) * (r/ell)^nu * K_nu(r/ell), with the
// continuous limit c(0) = c0.
double matern_kernel(const MaternParams& params, double r);

}  // namespace irgn
