#pragma once

#include <complex>
#include <vector>

#include "hyper3b/polyops.hpp"

namespace hyper3b::basis {

using poly::Complex;
using poly::Poly;

// Quantum numbers of one tree function.  All entries are plain (undoubled)
// integers; the tree sector only needs integer momenta.
struct TreeLabel {
  int K = 0, j1 = 0, j2 = 0, J = 0, M = 0;
};

bool valid(const TreeLabel& t);
void require_valid(const TreeLabel& t);

// Labels of the symmetrized (nu-split, Omega-diagonal) basis.
struct SymLabel {
  int K = 0, J = 0, M = 0;
  int two_nu = 0;
  int omega_index = 0;
};

// Solid harmonic r^j Y_jm as an exact polynomial; slot 0 uses variables
// (0,1,2), slot 1 uses (3,4,5).  Real chart.
Poly solid_harmonic(int j, int m, int slot);

double tree_norm(int K, int j1, int j2);

// Real-chart polynomial (variables xi, eta) and its complex-chart image.
Poly tree_function_real(const TreeLabel& t);
Poly tree_function(const TreeLabel& t);

std::vector<TreeLabel> enumerate_tree_basis(int K);
std::vector<std::pair<int, int>> tree_pairs(int K, int J);  // (j1,j2) at fixed K,J

long degeneracy(int K, int two_nu);        // n(K,nu), 0 outside range
long degeneracy_total(int K);              // n(K)
long harmonic_dimension(int K);            // dim of degree-K harmonics in 6 vars

// Projection of a homogeneous complex-chart polynomial onto its harmonic part.
Poly harmonic_projection(const Poly& f);

// J=0 eigenfunction at (K, nu): the harmonic projection of
// (z^2)^{(K/2+nu)/2} (z*^2)^{(K/2-nu)/2}.  On the sphere it equals
// gamma * i^nu e^{-i nu lambda} d^{K/4}_{-nu/2, nu/2}(2a).
struct J0Harmonic {
  int K = 0;
  int two_nu = 0;
  Poly poly;             // raw projection (top term has coefficient 1)
  Complex gamma;         // proportionality constant to the d-function form
  int two_m_dlabel = 0;  // D-realization row label (m, -m) with m = -nu/2
  double measured_nu = 0.0;

  // gamma * i^nu e^{-i nu lambda} d^{K/4}_{-nu/2,nu/2}(2a)
  Complex eval_shape(double lambda, double a) const;
};

J0Harmonic j0_harmonic(int K, int two_nu);

// Expansion of the orthonormal J=0 tree function (K, j1=j2=j) over the
// unit-normalized J=0 harmonics in their D-function phase convention:
// coeff[nu] such that T = sum_nu coeff * Ghat_nu,  Ghat_nu = G_nu/|G_nu|,
// G_nu = j0 poly / gamma.
struct J0Coeff {
  int two_nu = 0;         // N eigenvalue (doubled)
  int two_nu_dlabel = 0;  // D-realization row label (= -two_nu)
  Complex coeff;
  double cg = 0.0;       // CG(K/4,-nu/2; K/4,nu/2 | j 0)
};

std::vector<J0Coeff> j0_expansion_coeffs(int K, int j);

}  // namespace hyper3b::basis
