#include "hyper3b/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace hyper3b::sf {

namespace {

std::array<double, kMaxFactorialIndex + 1> build_log_factorials() {
  std::array<double, kMaxFactorialIndex + 1> t{};
  t[0] = 0.0;
  for (int i = 1; i <= kMaxFactorialIndex; ++i) t[i] = t[i - 1] + std::log(double(i));
  return t;
}

const auto kLogFact = build_log_factorials();

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  if (n > kMaxFactorialIndex)
    throw std::domain_error("log_factorial: index " + std::to_string(n) +
                            " exceeds supported range");
  return kLogFact[size_t(n)];
}

double factorial(int n) { return std::exp(log_factorial(n)); }

double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: nonpositive argument");
  return std::lgamma(x);
}

double binom_real(double u, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (u - i) / double(k - i);
  return r;
}

double jacobi_poly(const JacobiParams& p, double x) {
  if (p.alpha <= -1.0 || p.beta <= -1.0)
    throw std::domain_error("jacobi_poly: alpha,beta must exceed -1");
  if (p.n < 0) throw std::domain_error("jacobi_poly: negative degree");
  const double a = p.alpha, b = p.beta;
  if (p.n == 0) return 1.0;
  double pm1 = 1.0;
  double pc = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int k = 2; k <= p.n; ++k) {
    const double k2ab = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (k2ab - 2.0);
    const double c2 = (k2ab - 1.0) * (a * a - b * b);
    const double c3 = (k2ab - 2.0) * (k2ab - 1.0) * k2ab;
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * k2ab;
    const double pn = ((c2 + c3 * x) * pc - c4 * pm1) / c1;
    pm1 = pc;
    pc = pn;
  }
  return pc;
}

double gegenbauer_poly(double lam, int n, double x) {
  if (lam <= -0.5) throw std::domain_error("gegenbauer_poly: lambda must exceed -1/2");
  if (n < 0) throw std::domain_error("gegenbauer_poly: negative degree");
  if (n == 0) return 1.0;
  double cm1 = 1.0;
  double cc = 2.0 * lam * x;
  for (int k = 2; k <= n; ++k) {
    const double cn = (2.0 * x * (k + lam - 1.0) * cc - (k + 2.0 * lam - 2.0) * cm1) / k;
    cm1 = cc;
    cc = cn;
  }
  return cc;
}

double wigner_small_d(int two_j, int two_m, int two_n, double beta) {
  if (two_j < 0 || two_j > 2 * kMaxFactorialIndex)
    throw std::domain_error("wigner_small_d: two_j out of range");
  if (!projection_valid(two_j, two_m) || !projection_valid(two_j, two_n))
    throw std::out_of_range("wigner_small_d: invalid projection");

  const int jpm = (two_j + two_m) / 2, jmm = (two_j - two_m) / 2;
  const int jpn = (two_j + two_n) / 2, jmn = (two_j - two_n) / 2;
  const int mn = (two_m - two_n) / 2;
  const double logpre =
      0.5 * (log_factorial(jpm) + log_factorial(jmm) + log_factorial(jpn) + log_factorial(jmn));
  const double c = std::cos(beta / 2.0), s = std::sin(beta / 2.0);

  const int kmin = std::max(0, -mn);
  const int kmax = std::min(jpn, jmm);
  double sum = 0.0, comp = 0.0;  // Kahan
  for (int k = kmin; k <= kmax; ++k) {
    const double logden = log_factorial(jpn - k) + log_factorial(k) +
                          log_factorial(mn + k) + log_factorial(jmm - k);
    double term = std::exp(logpre - logden);
    const int ec = jpn - k + jmm - k;   // 2j - (m-n) - 2k as cos power
    const int es = mn + 2 * k;
    term *= std::pow(c, ec) * std::pow(s, es);
    if ((mn + k) % 2 != 0) term = -term;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::complex<double> wigner_D(int two_j, int two_m, int two_n,
                              double phi1, double theta, double phi2) {
  const double d = wigner_small_d(two_j, two_m, two_n, theta);
  const double arg = -0.5 * (two_m * phi1 + two_n * phi2);
  return std::polar(d, arg);
}

double delta_pi_half(int two_l, int two_m, int two_n) {
  return wigner_small_d(two_l, two_m, two_n, M_PI / 2.0);
}

double delta_pi_half_tilde(int two_l, int two_m, int two_n) {
  const int lmn = (two_l - two_n) / 2, lpn = (two_l + two_n) / 2;
  const int lmm = (two_l - two_m) / 2, lpm = (two_l + two_m) / 2;
  const double logr = 0.5 * (log_factorial(lmn) + log_factorial(lpn) -
                             log_factorial(lmm) - log_factorial(lpm));
  return std::exp(logr) * delta_pi_half(two_l, two_m, two_n);
}

}  // namespace hyper3b::sf
