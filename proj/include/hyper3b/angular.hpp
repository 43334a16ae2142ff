#pragma once

#include <stdexcept>
#include <string>

namespace hyper3b {

// Half-integer angular momenta are carried as doubled integers throughout,
// so j = two_j/2 and parity checks stay exact.
struct AngularMomentum {
  int two_j = 0;
  int two_m = 0;

  AngularMomentum() = default;
  AngularMomentum(int tj, int tm) : two_j(tj), two_m(tm) {
    if (two_j < 0) throw std::invalid_argument("AngularMomentum: two_j < 0");
    if ((two_j + two_m) % 2 != 0)
      throw std::invalid_argument("AngularMomentum: two_m and two_j parity differ");
    if (two_m < -two_j || two_m > two_j)
      throw std::invalid_argument("AngularMomentum: |two_m| > two_j");
  }
};

inline bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

inline bool projection_valid(int two_j, int two_m) {
  return two_j >= 0 && same_parity(two_j, two_m) && two_m >= -two_j && two_m <= two_j;
}

// |j1-j2| <= j3 <= j1+j2 and integer perimeter
inline bool triangle_ok(int two_j1, int two_j2, int two_j3) {
  if (two_j1 < 0 || two_j2 < 0 || two_j3 < 0) return false;
  if ((two_j1 + two_j2 + two_j3) % 2 != 0) return false;
  return two_j3 >= std::abs(two_j1 - two_j2) && two_j3 <= two_j1 + two_j2;
}

inline int phase_two(int two_k) {
  // (-1)^{two_k/2}; two_k must be even
  if (two_k % 2 != 0) throw std::invalid_argument("phase_two: odd doubled argument");
  return ((two_k / 2) % 2 == 0) ? 1 : -1;
}

}  // namespace hyper3b
