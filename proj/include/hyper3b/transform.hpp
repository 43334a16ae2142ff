#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hyper3b/basis.hpp"
#include "hyper3b/polyops.hpp"

namespace hyper3b::transform {

using basis::SymLabel;
using basis::TreeLabel;
using poly::Complex;
using poly::Poly;

// Matrix of <j1'j2'|j1j2>^phi_{KJM} over the admissible (j1,j2) pairs.
struct RotationCoeff {
  int K = 0, J = 0, M = 0;
  double phi = 0.0;
  std::vector<std::pair<int, int>> labels;  // row/column order
  Eigen::MatrixXd matrix;                   // row = (j1',j2'), col = (j1,j2)
};

// Overlap route: exact sphere integrals of rotated tree polynomials
// (the defining expression of the coefficient).
RotationCoeff rotation_coefficient(int K, int J, int M, double phi);

// d-function route: finite Fourier form sum_nu e^{i 2nu phi} Pi_nu built from
// the exact nu-projections of the tree basis (the rotation is generated by 2iN).
RotationCoeff rotation_coefficient_dform(int K, int J, int M, double phi);

struct TreeExpansion {
  TreeLabel label;
  double phi = 0.0;
  std::vector<std::pair<std::pair<int, int>, double>> coeffs;
};
TreeExpansion rotate_tree(const TreeLabel& t, double phi);

// Weyl turn: the tree function expressed exactly in the z/z* chart plus the
// (j1',j2') coefficient list at phi = pi/4.
struct WeylTurn {
  TreeLabel label;
  Poly zpoly;
  std::vector<std::pair<std::pair<int, int>, double>> coeffs;
};
WeylTurn weyl_turn(const TreeLabel& t);

struct NuPiece {
  int two_nu = 0;
  std::pair<int, int> tag;  // parent (j1,j2)
  Poly piece;
};
std::vector<NuPiece> nu_split(const WeylTurn& w);
std::vector<std::pair<int, Poly>> nu_split_poly(const Poly& f);

struct OmegaBlock {
  int K = 0, J = 0, M = 0, two_nu = 0;
  std::vector<std::pair<int, int>> tags;
  std::vector<Poly> funcs;
  Eigen::MatrixXcd omega;  // matrix of Omega' = i Omega
  Eigen::MatrixXcd gram;
};
OmegaBlock omega_block(int K, int J, int M, int two_nu);

struct SymFunction {
  SymLabel label;
  double omega_eigenvalue = 0.0;
  Poly func;  // orthonormalized simultaneous eigenfunction
  Eigen::VectorXcd components;
};
std::vector<SymFunction> diagonalize_block(const OmegaBlock& b);

// ---- exact expansion over shape-D x frame-D products ------------------------

// One term  coeff * D^{Lambda}_{nu, n}(lambda, a, 0) * D^{Jf}_{mu, Mf}(Euler)
// of a function restricted to the unit sphere (all labels doubled).
struct AngularTerm {
  int two_lambda = 0;
  int two_nu = 0;  // shape row index = N eigenvalue
  int two_n = 0;   // shape column index
  int two_J = 0, two_mu = 0, two_M = 0;
  Complex coeff;
};
std::vector<AngularTerm> angular_expansion(const Poly& f);

// a(Lambda, mu) table of the nu-piece of a tree function over
// D^{Lambda}_{nu, mu/2}(lambda,a,0) D^J_{mu,M}(Euler) products.
struct GeneralCoeff {
  int two_lambda = 0;
  int two_mu = 0;
  Complex a;
};
std::vector<GeneralCoeff> general_solution_coeffs(const TreeLabel& t, int two_nu);

// Evaluate an angular-term expansion at given shape + Euler angles.
Complex eval_angular(const std::vector<AngularTerm>& terms, double lambda, double a,
                     double phi1, double theta, double phi2);

}  // namespace hyper3b::transform
