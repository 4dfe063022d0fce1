#include "irgn/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irgn {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Taylor coefficients of 1/Gamma(1+z) around z = 0, odd terms only; used to
// evaluate [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu) without cancellation.
constexpr double kInvGammaOdd[] = {
    0.5772156649015329,    // z
    -0.0420026350340952,   // z^3
    -0.0421977345555443,   // z^5
    0.0072189432466630,    // z^7
    -0.0002152416741149,   // z^9
    -0.0000201348547807,   // z^11
    0.0000011330272320,    // z^13
};

struct GammaTerms {
  double gam1;   // [1/G(1-mu) - 1/G(1+mu)] / (2 mu)
  double gam2;   // [1/G(1-mu) + 1/G(1+mu)] / 2
  double gampl;  // 1/G(1+mu)
  double gammi;  // 1/G(1-mu)
};

GammaTerms gamma_terms(double mu) {
  GammaTerms g;
  g.gampl = 1.0 / std::tgamma(1.0 + mu);
  g.gammi = 1.0 / std::tgamma(1.0 - mu);
  g.gam2 = 0.5 * (g.gammi + g.gampl);
  if (std::abs(mu) < 1e-2) {
    const double m2 = mu * mu;
    double acc = 0.0, pw = 1.0;
    for (double c : kInvGammaOdd) {
      acc += c * pw;
      pw *= m2;
    }
    g.gam1 = -acc;
  } else {
    g.gam1 = (g.gammi - g.gampl) / (2.0 * mu);
  }
  return g;
}

// Temme's series for K_mu(x), K_{mu+1}(x), valid for x <= 2, |mu| <= 1/2.
void k_temme(double x, double mu, double* kmu, double* kmu1) {
  const double x2 = 0.5 * x;
  const double mu2 = mu * mu;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const GammaTerms g = gamma_terms(mu);
  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.gampl;
  double q = 0.5 / (e * g.gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  for (int i = 1; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * i - mu2);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  *kmu = sum;
  *kmu1 = sum1 * (2.0 / x);
}

// Steed/Thompson-Barnett continued fraction for x > 2, |mu| <= 1/2.
void k_steed(double x, double mu, double* kmu, double* kmu1) {
  const double mu2 = mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  *kmu = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  *kmu1 = *kmu * (mu + x + 0.5 - h) / x;
}

}  // namespace

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k: x must be positive");
  if (nu < 0.0) throw std::domain_error("bessel_k: order must be non-negative");
  if (!std::isfinite(x) || !std::isfinite(nu))
    throw std::domain_error("bessel_k: non-finite argument");

  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;  // in [-1/2, 1/2]

  double kmu, kmu1;
  if (x <= 2.0)
    k_temme(x, mu, &kmu, &kmu1);
  else
    k_steed(x, mu, &kmu, &kmu1);

  // Raise the order by stable forward recurrence K_{s+1} = (2s/x) K_s + K_{s-1}.
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double knext = (mu + i) * xi2 * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = knext;
    if (std::isinf(kmu1)) return std::numeric_limits<double>::infinity();
  }
  if (std::isinf(kmu)) return std::numeric_limits<double>::infinity();
  return kmu;
}

}  // namespace irgn
