#include "hyper3b/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hyper3b/coupling.hpp"
#include "hyper3b/special_functions.hpp"

namespace hyper3b::transform {

namespace {

const Complex I(0.0, 1.0);

// rotation of the (eta, xi) doublet in the real chart:
// xi <- cos(phi) xi - sin(phi) eta,  eta <- sin(phi) xi + cos(phi) eta
Poly rotate_real_chart(const Poly& f, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  std::array<std::array<Complex, 6>, 6> map{};
  for (int k = 0; k < 3; ++k) {
    map[size_t(k)][size_t(k)] = c;
    map[size_t(k)][size_t(k + 3)] = -s;
    map[size_t(k + 3)][size_t(k)] = s;
    map[size_t(k + 3)][size_t(k + 3)] = c;
  }
  return f.substitute_linear(map);
}

struct TreeBasisZ {
  std::vector<std::pair<int, int>> labels;
  std::vector<Poly> zpolys;       // complex chart, unit norm
  std::vector<Poly> realpolys;    // real chart
};

TreeBasisZ tree_basis(int K, int J, int M) {
  TreeBasisZ b;
  b.labels = basis::tree_pairs(K, J);
  for (auto& [j1, j2] : b.labels) {
    Poly rp = basis::tree_function_real({K, j1, j2, J, M});
    b.realpolys.push_back(rp);
    b.zpolys.push_back(poly::substitute_real(rp));
  }
  return b;
}

}  // namespace

RotationCoeff rotation_coefficient(int K, int J, int M, double phi) {
  if (K < 0 || J < 0 || std::abs(M) > J)
    throw std::invalid_argument("rotation_coefficient: bad labels");
  TreeBasisZ b = tree_basis(K, J, M);
  const int n = int(b.labels.size());
  RotationCoeff rc{K, J, M, phi, b.labels, Eigen::MatrixXd::Zero(n, n)};
  for (int col = 0; col < n; ++col) {
    Poly rotated = poly::substitute_real(rotate_real_chart(b.realpolys[size_t(col)], phi));
    for (int row = 0; row < n; ++row)
      rc.matrix(row, col) = poly::inner_product(rotated, b.zpolys[size_t(row)]).real();
  }
  return rc;
}

RotationCoeff rotation_coefficient_dform(int K, int J, int M, double phi) {
  if (K < 0 || J < 0 || std::abs(M) > J)
    throw std::invalid_argument("rotation_coefficient_dform: bad labels");
  TreeBasisZ b = tree_basis(K, J, M);
  const int n = int(b.labels.size());
  // Pi_nu(row, col) = <T_row, P_nu T_col>; coefficient = sum_nu e^{i 2nu phi} Pi_nu
  std::map<int, Eigen::MatrixXcd> proj;
  for (int col = 0; col < n; ++col) {
    auto pieces = nu_split_poly(b.zpolys[size_t(col)]);
    for (auto& [two_nu, piece] : pieces) {
      auto it = proj.find(two_nu);
      if (it == proj.end())
        it = proj.emplace(two_nu, Eigen::MatrixXcd::Zero(n, n)).first;
      for (int row = 0; row < n; ++row)
        it->second(row, col) = poly::inner_product(piece, b.zpolys[size_t(row)]);
    }
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (auto& [two_nu, P] : proj) acc += std::polar(1.0, two_nu * phi) * P;
  RotationCoeff rc{K, J, M, phi, b.labels, acc.real()};
  return rc;
}

TreeExpansion rotate_tree(const TreeLabel& t, double phi) {
  basis::require_valid(t);
  RotationCoeff rc = rotation_coefficient(t.K, t.J, t.M, phi);
  TreeExpansion e{t, phi, {}};
  int col = -1;
  for (int i = 0; i < int(rc.labels.size()); ++i)
    if (rc.labels[size_t(i)] == std::make_pair(t.j1, t.j2)) col = i;
  for (int row = 0; row < int(rc.labels.size()); ++row)
    e.coeffs.emplace_back(rc.labels[size_t(row)], rc.matrix(row, col));
  return e;
}

WeylTurn weyl_turn(const TreeLabel& t) {
  basis::require_valid(t);
  WeylTurn w;
  w.label = t;
  w.zpoly = basis::tree_function(t);
  TreeExpansion e = rotate_tree(t, M_PI / 4.0);
  w.coeffs = e.coeffs;
  return w;
}

std::vector<std::pair<int, Poly>> nu_split_poly(const Poly& f) {
  std::map<int, Poly> pieces;
  for (const auto& [m, c] : f.terms()) {
    const int two_nu = poly::holo_degree(m) - poly::anti_degree(m);
    pieces[two_nu].add_term(m, c);
  }
  return {pieces.begin(), pieces.end()};
}

std::vector<NuPiece> nu_split(const WeylTurn& w) {
  std::vector<NuPiece> out;
  const double scale = w.zpoly.max_abs_coeff();
  for (auto& [two_nu, piece] : nu_split_poly(w.zpoly)) {
    if (piece.max_abs_coeff() <= 1e-12 * scale) continue;  // cancellation residue
    out.push_back({two_nu, {w.label.j1, w.label.j2}, piece});
  }
  return out;
}

OmegaBlock omega_block(int K, int J, int M, int two_nu) {
  OmegaBlock b;
  b.K = K;
  b.J = J;
  b.M = M;
  b.two_nu = two_nu;
  for (auto& [j1, j2] : basis::tree_pairs(K, J)) {
    Poly zp = basis::tree_function({K, j1, j2, J, M});
    Poly piece;
    for (const auto& [m, c] : zp.terms())
      if (poly::holo_degree(m) - poly::anti_degree(m) == two_nu) piece.add_term(m, c);
    if (piece.empty()) continue;
    if (poly::is_zero(piece, 1e-12, zp.max_abs_coeff())) continue;
    b.tags.emplace_back(j1, j2);
    b.funcs.push_back(piece);
  }
  const int n = int(b.funcs.size());
  b.gram.resize(n, n);
  b.omega.resize(n, n);
  std::vector<Poly> omf;
  omf.reserve(size_t(n));
  for (int t = 0; t < n; ++t)
    omf.push_back(apply(poly::op_Omega(), b.funcs[size_t(t)]) * I);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) {
      // physics convention <f_s | X | f_t> = integral conj(f_s) X f_t
      b.gram(s, t) = poly::inner_product(b.funcs[size_t(t)], b.funcs[size_t(s)]);
      b.omega(s, t) = poly::inner_product(omf[size_t(t)], b.funcs[size_t(s)]);
    }
  return b;
}

std::vector<SymFunction> diagonalize_block(const OmegaBlock& b) {
  const int n = int(b.funcs.size());
  std::vector<SymFunction> out;
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges(b.gram);
  const Eigen::VectorXd gev = ges.eigenvalues();
  const double gmax = gev.maxCoeff();
  const double rank_tol = 1e-12 * gmax;
  // rank-revealing reduction of the Gram matrix
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (gev(i) > rank_tol) keep.push_back(i);
  const int r = int(keep.size());
  Eigen::MatrixXcd P(n, r);
  for (int c = 0; c < r; ++c)
    P.col(c) = ges.eigenvectors().col(keep[size_t(c)]) / std::sqrt(gev(keep[size_t(c)]));
  // reduced Hermitian problem
  Eigen::MatrixXcd W = P.adjoint() * b.omega * P;
  W = 0.5 * (W + W.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);

  struct Cand {
    double ev;
    Eigen::VectorXcd v;
    int dom;
  };
  std::vector<Cand> cands;
  for (int k = 0; k < r; ++k) {
    Eigen::VectorXcd v = P * es.eigenvectors().col(k);
    int dom = 0;
    double best = -1.0;
    for (int t = 0; t < n; ++t)
      if (std::abs(v(t)) > best + 1e-12) {
        best = std::abs(v(t));
        dom = t;
      }
    cands.push_back({es.eigenvalues()(k), v, dom});
  }
  std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& c) {
    if (std::abs(a.ev - c.ev) > 1e-9) return a.ev < c.ev;
    return b.tags[size_t(a.dom)] < b.tags[size_t(c.dom)];
  });

  for (int k = 0; k < r; ++k) {
    SymFunction f;
    f.label = {b.K, b.J, b.M, b.two_nu, k};
    f.omega_eigenvalue = cands[size_t(k)].ev;
    f.components = cands[size_t(k)].v;
    Poly g;
    for (int t = 0; t < n; ++t) g += cands[size_t(k)].v(t) * b.funcs[size_t(t)];
    f.func = g;
    out.push_back(std::move(f));
  }
  return out;
}

// ---- angular expansion ------------------------------------------------------

namespace {

// key: shape (two_lambda, two_nu, two_n) + frame (two_J, two_mu, two_M)
using AKey = std::array<int, 6>;
using AMap = std::map<AKey, Complex>;

void amap_add(AMap& m, const AKey& k, Complex c) {
  if (c == 0.0) return;
  auto [it, ins] = m.emplace(k, c);
  if (!ins) {
    it->second += c;
    if (std::abs(it->second) < 1e-300) m.erase(it);
  }
}

// product of two D-sectors by the Clebsch-Gordan series
AMap amap_mul(const AMap& A, const AMap& B) {
  AMap out;
  for (auto& [ka, ca] : A)
    for (auto& [kb, cb] : B) {
      const int tl1 = ka[0], tnu1 = ka[1], tn1 = ka[2];
      const int tl2 = kb[0], tnu2 = kb[1], tn2 = kb[2];
      const int tJ1 = ka[3], tmu1 = ka[4], tM1 = ka[5];
      const int tJ2 = kb[3], tmu2 = kb[4], tM2 = kb[5];
      for (int tl = std::abs(tl1 - tl2); tl <= tl1 + tl2; tl += 2) {
        const double s1 = coupling::clebsch_gordan(tl1, tnu1, tl2, tnu2, tl, tnu1 + tnu2);
        if (s1 == 0.0) continue;
        const double s2 = coupling::clebsch_gordan(tl1, tn1, tl2, tn2, tl, tn1 + tn2);
        if (s2 == 0.0) continue;
        for (int tJ = std::abs(tJ1 - tJ2); tJ <= tJ1 + tJ2; tJ += 2) {
          const double f1 = coupling::clebsch_gordan(tJ1, tmu1, tJ2, tmu2, tJ, tmu1 + tmu2);
          if (f1 == 0.0) continue;
          const double f2 = coupling::clebsch_gordan(tJ1, tM1, tJ2, tM2, tJ, tM1 + tM2);
          if (f2 == 0.0) continue;
          AKey k{tl, tnu1 + tnu2, tn1 + tn2, tJ, tmu1 + tmu2, tM1 + tM2};
          amap_add(out, k, ca * cb * s1 * s2 * f1 * f2);
        }
      }
    }
  return out;
}

// base expansions of the spherical components of z and z* (rho = 1):
//  s_M(z)  =  i D^{1/2}_{ 1/2, 1/2}(lam,a,0) D^1_{-1,M} - D^{1/2}_{ 1/2,-1/2}(lam,a,0) D^1_{+1,M}
//  s_M(z*) = -i D^{1/2}_{-1/2,-1/2}(lam,a,0) D^1_{+1,M} + D^{1/2}_{-1/2, 1/2}(lam,a,0) D^1_{-1,M}
AMap base_z(int M) {
  AMap m;
  amap_add(m, {1, 1, 1, 2, -2, 2 * M}, I);
  amap_add(m, {1, 1, -1, 2, 2, 2 * M}, Complex(-1.0, 0.0));
  return m;
}

AMap base_zbar(int M) {
  AMap m;
  amap_add(m, {1, -1, -1, 2, 2, 2 * M}, -I);
  amap_add(m, {1, -1, 1, 2, -2, 2 * M}, Complex(1.0, 0.0));
  return m;
}

}  // namespace

std::vector<AngularTerm> angular_expansion(const Poly& f) {
  // change to spherical-component variables:
  //   Z_{+1} Z_0 Z_{-1} Zb_{+1} Zb_0 Zb_{-1}
  // z1 = i(Z_{+1} - Z_{-1})/sqrt2, z2 = (Z_{+1} + Z_{-1})/sqrt2, z3 = -i Z_0
  std::array<std::array<Complex, 6>, 6> map{};
  const double is2 = 1.0 / std::sqrt(2.0);
  map[0][0] = I * is2;
  map[0][2] = -I * is2;
  map[1][0] = is2;
  map[1][2] = is2;
  map[2][1] = -I;
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d) map[size_t(3 + c)][size_t(3 + d)] = map[size_t(c)][size_t(d)];
  Poly g = f.substitute_linear(map);

  static const int Mv[3] = {+1, 0, -1};
  AMap total;
  for (const auto& [mono, coef] : g.terms()) {
    AMap acc;
    amap_add(acc, {0, 0, 0, 0, 0, 0}, coef);
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < mono[size_t(v)]; ++e) acc = amap_mul(acc, base_z(Mv[v]));
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < mono[size_t(3 + v)]; ++e) acc = amap_mul(acc, base_zbar(Mv[v]));
    for (auto& [k, c] : acc) amap_add(total, k, c);
  }

  std::vector<AngularTerm> out;
  for (auto& [k, c] : total) {
    if (std::abs(c) < 1e-13) continue;
    out.push_back({k[0], k[1], k[2], k[3], k[4], k[5], c});
  }
  return out;
}

Complex eval_angular(const std::vector<AngularTerm>& terms, double lambda, double a,
                     double phi1, double theta, double phi2) {
  Complex s = 0.0;
  for (const auto& t : terms) {
    const Complex shape = sf::wigner_D(t.two_lambda, t.two_nu, t.two_n, lambda, a, 0.0);
    const Complex frame = sf::wigner_D(t.two_J, t.two_mu, t.two_M, phi1, theta, phi2);
    s += t.coeff * shape * frame;
  }
  return s;
}

std::vector<GeneralCoeff> general_solution_coeffs(const TreeLabel& t, int two_nu) {
  basis::require_valid(t);
  Poly zp = basis::tree_function(t);
  Poly piece;
  for (const auto& [m, c] : zp.terms())
    if (poly::holo_degree(m) - poly::anti_degree(m) == two_nu) piece.add_term(m, c);
  std::vector<GeneralCoeff> out;
  if (piece.empty()) return out;
  auto terms = angular_expansion(piece);
  for (const auto& at : terms) {
    if (at.two_nu != two_nu)
      throw std::logic_error("general_solution_coeffs: nu grading mismatch");
    // structure D^{Lambda}_{nu, -mu/2}(lambda,a,0) D^J_{mu,M}: the shape column
    // is locked to the frame row index
    if (2 * at.two_n != -at.two_mu)
      throw std::logic_error("general_solution_coeffs: mu locking violated");
    out.push_back({at.two_lambda, at.two_mu, at.coeff});
  }
  return out;
}

}  // namespace hyper3b::transform
