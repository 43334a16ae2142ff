#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hyper3b::poly {

using Complex = std::complex<double>;

// Exponent vector of one monomial.  Variable meaning depends on the chart the
// polynomial lives in: complex chart (z1,z2,z3,z1*,z2*,z3*) or real chart
// (xi1,xi2,xi3,eta1,eta2,eta3).  All operator algebra below assumes the
// complex chart.
using Mono = std::array<unsigned char, 6>;

inline int total_degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}
inline int holo_degree(const Mono& m) { return m[0] + m[1] + m[2]; }
inline int anti_degree(const Mono& m) { return m[3] + m[4] + m[5]; }

class Poly {
 public:
  Poly() = default;
  static Poly constant(Complex c);
  static Poly variable(int k);  // k in [0,6)

  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Mono, Complex>& terms() const { return terms_; }

  Complex coeff(const Mono& m) const;
  void set(const Mono& m, Complex c);
  void add_term(const Mono& m, Complex c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Complex c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, Complex c) { return a *= c; }
  friend Poly operator*(Complex c, Poly a) { return a *= c; }
  Poly operator*(const Poly& o) const;

  Poly derivative(int var) const;
  Poly mul_var(int var) const;

  // Complex conjugate of the function.  In the complex chart this swaps the
  // z and z* exponent blocks; in the real chart exponents stay put.
  Poly conj_complex_chart() const;
  Poly conj_real_chart() const;

  // var k -> sum_j map[k][j] * var j  (simultaneous linear substitution)
  Poly substitute_linear(const std::array<std::array<Complex, 6>, 6>& map) const;

  Complex eval(const std::array<Complex, 6>& x) const;

  double max_abs_coeff() const;
  void prune(double tol);

  // One term per line, "coeff_re coeff_im e1 e2 e3 e4 e5 e6", exponent-sorted.
  std::string dump() const;
  static Poly parse(const std::string& text);

  bool is_homogeneous(int* degree = nullptr) const;

 private:
  std::map<Mono, Complex> terms_;
};

// xi_k = (z_k + z_k*)/2, eta_k = (z_k - z_k*)/(2i): real chart -> complex chart
Poly substitute_real(const Poly& f_real_chart);
// inverse: z_k = xi_k + i eta_k, z_k* = xi_k - i eta_k
Poly substitute_complex(const Poly& f_complex_chart);

// ---- operator algebra (complex chart) --------------------------------------

struct OperatorTag {
  enum Kind { A, L, B, N, Lap6, L2, L3, Omega } kind;
  int i = 0;  // 0-based indices for A/L/B
  int k = 0;
};

inline OperatorTag op_A(int i, int k) { return {OperatorTag::A, i, k}; }
inline OperatorTag op_L(int i, int k) { return {OperatorTag::L, i, k}; }
inline OperatorTag op_B(int i, int k) { return {OperatorTag::B, i, k}; }
inline OperatorTag op_N() { return {OperatorTag::N, 0, 0}; }
inline OperatorTag op_Lap6() { return {OperatorTag::Lap6, 0, 0}; }
// L2 carries the negative-definite sign convention: eigenvalue -J(J+1).
inline OperatorTag op_L2() { return {OperatorTag::L2, 0, 0}; }
inline OperatorTag op_L3() { return {OperatorTag::L3, 0, 0}; }
inline OperatorTag op_Omega() { return {OperatorTag::Omega, 0, 0}; }

Poly apply(const OperatorTag& op, const Poly& f);
Poly commutator(const OperatorTag& op1, const OperatorTag& op2, const Poly& f);

// Exact integral over the unit 5-sphere of f * conj(g), complex chart.
Complex inner_product(const Poly& f, const Poly& g);
double norm(const Poly& f);

// max |coeff| <= tol * ref  (ref defaults to 1)
bool is_zero(const Poly& f, double tol = 1e-10, double ref = 1.0);

// Spherical components of the complex coordinate vectors in the conventions
// used throughout: returns the polynomial for z_M or z*_M, M in {-1,0,+1}.
//   s_{+1}(A) = -i(Ax + iAy)/sqrt2,  s_0(A) = i Az,  s_{-1}(A) = i(Ax - iAy)/sqrt2
Poly z_component(int M);
Poly zbar_component(int M);

// rho^2 = sum z_k z_k* as a polynomial
Poly rho2();

}  // namespace hyper3b::poly
