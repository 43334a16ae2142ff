#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "hyper3b/angular.hpp"

namespace hyper3b::coupling {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact carrier for recoupling coefficients: value = rat * sqrt(rad),
// rad >= 0.  The square of the magnitude stays rational end to end; the
// conversion to double happens only at the boundary.
struct SqrtRational {
  BigRat rat = 0;
  BigRat rad = 1;

  double to_double() const;
  bool is_zero() const { return rat == 0 || rad == 0; }
};

// All arguments are doubled integers.  Selection-rule violations return 0.
SqrtRational clebsch_gordan_exact(int two_j1, int two_m1, int two_j2, int two_m2,
                                  int two_J, int two_M);
SqrtRational wigner_3j_exact(int two_j1, int two_j2, int two_j3,
                             int two_m1, int two_m2, int two_m3);
SqrtRational wigner_6j_exact(int two_j1, int two_j2, int two_j3,
                             int two_j4, int two_j5, int two_j6);
SqrtRational wigner_9j_exact(int two_j1, int two_j2, int two_j3,
                             int two_j4, int two_j5, int two_j6,
                             int two_j7, int two_j8, int two_j9);

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M);
double wigner_3j(int two_j1, int two_j2, int two_j3,
                 int two_m1, int two_m2, int two_m3);
double wigner_6j(int two_j1, int two_j2, int two_j3,
                 int two_j4, int two_j5, int two_j6);
double wigner_9j(int two_j1, int two_j2, int two_j3,
                 int two_j4, int two_j5, int two_j6,
                 int two_j7, int two_j8, int two_j9);

// Composite symbol used by the O(6) rotation coefficient: dimension factors,
// four zero-projection 3j symbols and a 9j symbol.  Integer (undoubled)
// arguments.
double double_brace(int p, int r, int j1p,
                    int q, int s, int j2p,
                    int j1, int j2, int J);

}  // namespace hyper3b::coupling
