#include "hyper3b/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hyper3b/coupling.hpp"
#include "hyper3b/special_functions.hpp"

namespace hyper3b::basis {

namespace {
const Complex I(0.0, 1.0);
}

bool valid(const TreeLabel& t) {
  if (t.K < 0 || t.j1 < 0 || t.j2 < 0) return false;
  if (t.j1 + t.j2 > t.K) return false;
  if ((t.K - t.j1 - t.j2) % 2 != 0) return false;
  if (t.J < std::abs(t.j1 - t.j2) || t.J > t.j1 + t.j2) return false;
  if (std::abs(t.M) > t.J) return false;
  return true;
}

void require_valid(const TreeLabel& t) {
  if (!valid(t)) throw std::invalid_argument("invalid tree label");
}

Poly solid_harmonic(int j, int m, int slot) {
  if (j < 0 || std::abs(m) > j || slot < 0 || slot > 1)
    throw std::invalid_argument("solid_harmonic: bad arguments");

  static std::map<std::tuple<int, int, int>, Poly> memo;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    auto it = memo.find({j, m, slot});
    if (it != memo.end()) return it->second;
  }

  const int o = 3 * slot;
  // highest weight: S_jj = (-1)^j sqrt((2j+1)!/(4pi)) / (2^j j!) (x+iy)^j
  Poly xy = Poly::variable(o) + I * Poly::variable(o + 1);
  Poly cur = Poly::constant(1.0);
  for (int k = 0; k < j; ++k) cur = cur * xy;
  double c = std::exp(0.5 * sf::log_factorial(2 * j + 1) - sf::log_factorial(j)) /
             (std::pow(2.0, j) * 2.0 * std::sqrt(M_PI));
  if (j % 2 != 0) c = -c;
  cur *= Complex(c, 0.0);

  std::map<int, Poly> ladder;
  ladder[j] = cur;
  for (int mm = j; mm > -j; --mm) {
    // J- = Lx - i Ly with L = -i x cross grad on the slot variables
    const Poly& f = ladder[mm];
    Poly Lx = (f.derivative(o + 2).mul_var(o + 1) - f.derivative(o + 1).mul_var(o + 2)) *
              Complex(0.0, -1.0);
    Poly Ly = (f.derivative(o).mul_var(o + 2) - f.derivative(o + 2).mul_var(o)) *
              Complex(0.0, -1.0);
    Poly lowered = Lx + Complex(0.0, -1.0) * Ly;
    lowered *= Complex(1.0 / std::sqrt(double(j) * (j + 1) - double(mm) * (mm - 1)), 0.0);
    ladder[mm - 1] = lowered;
  }

  std::lock_guard lock(mu);
  for (auto& [mm, p] : ladder) memo.emplace(std::make_tuple(j, mm, slot), p);
  return ladder[m];
}

double tree_norm(int K, int j1, int j2) {
  if (K < 0 || j1 < 0 || j2 < 0 || j1 + j2 > K || (K - j1 - j2) % 2 != 0)
    throw std::invalid_argument("tree_norm: invalid (K, j1, j2)");
  const double lg = std::log(2.0 * (K + 2)) + sf::log_gamma((K - j1 - j2) / 2.0 + 1.0) +
                    sf::log_gamma((K + j1 + j2) / 2.0 + 2.0) -
                    sf::log_gamma((K - j1 + j2) / 2.0 + 1.5) -
                    sf::log_gamma((K + j1 - j2) / 2.0 + 1.5);
  return std::exp(0.5 * lg);
}

Poly tree_function_real(const TreeLabel& t) {
  require_valid(t);
  const int n = (t.K - t.j1 - t.j2) / 2;

  // rho^{2n} P_n^{(j2+1/2, j1+1/2)}((xi^2-eta^2)/rho^2)
  //   = sum_m C(n+j2+1/2, m) C(n+j1+1/2, n-m) (xi^2)^m (-eta^2)^{n-m}
  Poly xi2, eta2;
  for (int k = 0; k < 3; ++k) {
    poly::Mono a{}, b{};
    a[size_t(k)] = 2;
    b[size_t(k + 3)] = 2;
    xi2.add_term(a, 1.0);
    eta2.add_term(b, 1.0);
  }
  Poly hyper;
  for (int m = 0; m <= n; ++m) {
    double c = sf::binom_real(n + t.j2 + 0.5, m) * sf::binom_real(n + t.j1 + 0.5, n - m);
    if ((n - m) % 2 != 0) c = -c;
    Poly term = Poly::constant(c);
    for (int k = 0; k < m; ++k) term = term * xi2;
    for (int k = 0; k < n - m; ++k) term = term * eta2;
    hyper += term;
  }

  Poly angular;
  for (int m1 = -t.j1; m1 <= t.j1; ++m1) {
    const int m2 = t.M - m1;
    if (std::abs(m2) > t.j2) continue;
    const double cg =
        coupling::clebsch_gordan(2 * t.j1, 2 * m1, 2 * t.j2, 2 * m2, 2 * t.J, 2 * t.M);
    if (cg == 0.0) continue;
    angular += Complex(cg, 0.0) * (solid_harmonic(t.j1, m1, 0) * solid_harmonic(t.j2, m2, 1));
  }
  Poly out = angular * hyper;
  out *= Complex(tree_norm(t.K, t.j1, t.j2), 0.0);
  return out;
}

Poly tree_function(const TreeLabel& t) { return poly::substitute_real(tree_function_real(t)); }

std::vector<TreeLabel> enumerate_tree_basis(int K) {
  if (K < 0) throw std::invalid_argument("enumerate_tree_basis: K < 0");
  std::vector<TreeLabel> out;
  for (int j1 = 0; j1 <= K; ++j1)
    for (int j2 = 0; j1 + j2 <= K; ++j2) {
      if ((K - j1 - j2) % 2 != 0) continue;
      for (int J = std::abs(j1 - j2); J <= j1 + j2; ++J)
        for (int M = -J; M <= J; ++M) out.push_back({K, j1, j2, J, M});
    }
  return out;
}

std::vector<std::pair<int, int>> tree_pairs(int K, int J) {
  std::vector<std::pair<int, int>> out;
  for (int j1 = 0; j1 <= K; ++j1)
    for (int j2 = 0; j1 + j2 <= K; ++j2) {
      if ((K - j1 - j2) % 2 != 0) continue;
      if (J >= std::abs(j1 - j2) && J <= j1 + j2) out.emplace_back(j1, j2);
    }
  return out;
}

long degeneracy(int K, int two_nu) {
  if (K < 0) return 0;
  if (std::abs(two_nu) > K) return 0;
  if ((K - two_nu) % 2 != 0) return 0;
  const long k2 = K + 2;
  return k2 * (k2 * k2 - long(two_nu) * two_nu) / 8;
}

long degeneracy_total(int K) {
  if (K < 0) return 0;
  return long(K + 3) * (K + 2) * (K + 2) * (K + 1) / 12;
}

long harmonic_dimension(int K) {
  auto choose5 = [](long n) -> long {
    if (n < 5) return 0;
    return n * (n - 1) * (n - 2) * (n - 3) * (n - 4) / 120;
  };
  return choose5(K + 5) - choose5(K + 3);
}

Poly harmonic_projection(const Poly& f) {
  int deg = 0;
  if (!f.is_homogeneous(&deg))
    throw std::invalid_argument("harmonic_projection: polynomial not homogeneous");
  // H(f) = sum_k c_k rho^{2k} Lap^k f,  c_k = (-1)^k (d/2+n-k-2)!/(4^k k! (d/2+n-2)!), d = 6
  Poly out = f;
  Poly lapk = f;
  Poly rk = Poly::constant(1.0);
  const Poly r2 = poly::rho2();
  double coef = 1.0;
  for (int k = 1; 2 * k <= deg; ++k) {
    lapk = apply(poly::op_Lap6(), lapk);
    if (lapk.empty()) break;
    rk = rk * r2;
    coef *= -1.0 / (4.0 * k * (3.0 + deg - k - 1.0));
    out += Complex(coef, 0.0) * (rk * lapk);
  }
  return out;
}

J0Harmonic j0_harmonic(int K, int two_nu) {
  if (K < 0 || K % 2 != 0 || std::abs(two_nu) > K || (K / 2 - two_nu / 2) % 2 != 0 ||
      two_nu % 2 != 0)
    throw std::invalid_argument("j0_harmonic: invalid (K, nu) sector");
  const int nu = two_nu / 2;
  const int alpha = (K / 2 + nu) / 2, beta = (K / 2 - nu) / 2;

  Poly z2, zb2;
  for (int k = 0; k < 3; ++k) {
    poly::Mono a{}, b{};
    a[size_t(k)] = 2;
    b[size_t(k + 3)] = 2;
    z2.add_term(a, 1.0);
    zb2.add_term(b, 1.0);
  }
  Poly f = Poly::constant(1.0);
  for (int k = 0; k < alpha; ++k) f = f * z2;
  for (int k = 0; k < beta; ++k) f = f * zb2;

  J0Harmonic h;
  h.K = K;
  h.two_nu = two_nu;
  h.poly = harmonic_projection(f);
  h.two_m_dlabel = -nu;

  // measured N eigenvalue from the leading term
  Poly nf = apply(poly::op_N(), h.poly);
  const auto& lead = *h.poly.terms().begin();
  h.measured_nu = (nf.coeff(lead.first) / lead.second).real();

  // gamma from one generic shape point (identity frame)
  const double lam0 = 0.37, a0 = 0.83;
  const Complex dform = std::pow(I, nu) * std::polar(1.0, -nu * lam0) *
                        sf::wigner_small_d(K / 2, -nu, nu, 2.0 * a0);
  // evaluate poly at z = e^{-i lam/2}(cos(a/2) l+ + i sin(a/2) l-), identity frame
  const Complex el = std::exp(-I * lam0 / 2.0);
  const double ch = std::cos(a0 / 2.0), sh = std::sin(a0 / 2.0);
  const Complex inv_s2 = 1.0 / std::sqrt(2.0);
  std::array<Complex, 6> zv{};
  // l+ = (ex + i ey)/sqrt2, l- = conj
  zv[0] = el * (ch * inv_s2 + I * sh * inv_s2);
  zv[1] = el * (ch * I * inv_s2 + I * sh * (-I) * inv_s2);
  zv[2] = 0.0;
  zv[3] = std::conj(zv[0]);
  zv[4] = std::conj(zv[1]);
  zv[5] = std::conj(zv[2]);
  h.gamma = h.poly.eval(zv) / dform;
  return h;
}

Complex J0Harmonic::eval_shape(double lambda, double a) const {
  const int nu = two_nu / 2;
  return gamma * std::pow(I, nu) * std::polar(1.0, -nu * lambda) *
         sf::wigner_small_d(K / 2, -nu, nu, 2.0 * a);
}

std::vector<J0Coeff> j0_expansion_coeffs(int K, int j) {
  if (K < 0 || K % 2 != 0 || j < 0 || 2 * j > K)
    throw std::invalid_argument("j0_expansion_coeffs: invalid sector");
  Poly T = tree_function({K, j, j, 0, 0});
  std::vector<J0Coeff> out;
  for (int two_nu = -K; two_nu <= K; two_nu += 4) {
    J0Harmonic h = j0_harmonic(K, two_nu);
    Poly G = h.poly * (1.0 / h.gamma);
    const double nrm = poly::norm(G);
    J0Coeff c;
    c.two_nu = two_nu;
    c.two_nu_dlabel = -two_nu;
    c.coeff = poly::inner_product(T, G) / nrm;
    // CG(K/4, -nu/2; K/4, nu/2 | j 0), doubled arguments
    c.cg = coupling::clebsch_gordan(K / 2, -two_nu / 2, K / 2, two_nu / 2, 2 * j, 0);
    out.push_back(c);
  }
  return out;
}

}  // namespace hyper3b::basis
