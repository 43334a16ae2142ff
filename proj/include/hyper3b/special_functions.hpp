#pragma once

#include <complex>

#include "hyper3b/angular.hpp"

namespace hyper3b::sf {

// Factorial bookkeeping is capped: indices above kMaxFactorialIndex are out
// of desk scale and the functions below refuse them instead of overflowing.
inline constexpr int kMaxFactorialIndex = 64;

double log_factorial(int n);          // ln n!, n in [0, kMaxFactorialIndex]
double factorial(int n);
double log_gamma(double x);           // ln Gamma(x), x > 0
double binom_real(double u, int k);   // generalized binomial C(u, k)

struct JacobiParams {
  double alpha;
  double beta;
  int n;
};

// P_n^{(alpha,beta)}(x), three-term recurrence.
double jacobi_poly(const JacobiParams& p, double x);

// Gegenbauer C_n^{lambda}(x), three-term recurrence.
double gegenbauer_poly(double lam, int n, double x);

// Wigner small-d in the real orthogonal convention: d^j_{mn}(0) = delta_mn,
// d^1_{00}(beta) = cos beta, d^{1/2}_{1/2,-1/2}(beta) = -sin(beta/2).
double wigner_small_d(int two_j, int two_m, int two_n, double beta);

// D^j_{mn}(phi1,theta,phi2) = exp(-i(m phi1 + n phi2)) d^j_{mn}(theta).
std::complex<double> wigner_D(int two_j, int two_m, int two_n,
                              double phi1, double theta, double phi2);

// Delta^{(l)}_{mn} = d^l_{mn}(pi/2) and its factorial-rescaled variant
// tilde-Delta^{(l)}_{mn} = sqrt((l-n)!(l+n)!/((l-m)!(l+m)!)) Delta^{(l)}_{mn}.
double delta_pi_half(int two_l, int two_m, int two_n);
double delta_pi_half_tilde(int two_l, int two_m, int two_n);

}  // namespace hyper3b::sf
