// Acceptance suite: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "hyper3b/basis.hpp"
#include "hyper3b/coupling.hpp"
#include "hyper3b/dynamics.hpp"
#include "hyper3b/io.hpp"
#include "hyper3b/kinematics.hpp"
#include "hyper3b/polyops.hpp"
#include "hyper3b/transform.hpp"

using namespace hyper3b;
using poly::Complex;
using poly::Poly;

namespace {

const Complex I(0, 1);
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s - %s (%s)\n", idx, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

// all symmetrized functions for a given K (every J, M, nu block)
std::vector<transform::SymFunction> sym_functions(int K, bool all_M) {
  std::vector<transform::SymFunction> out;
  for (int J = 0; J <= K; ++J) {
    if (basis::tree_pairs(K, J).empty()) continue;
    for (int M = all_M ? -J : 0; M <= (all_M ? J : 0); ++M)
      for (int two_nu = -K; two_nu <= K; two_nu += 2) {
        if ((K - two_nu) % 2 != 0) continue;
        auto blk = transform::omega_block(K, J, M, two_nu);
        for (auto& f : transform::diagonalize_block(blk)) out.push_back(f);
      }
  }
  return out;
}

void criterion1() {
  Timer timer;
  double worst = 0.0;
  long count = 0;
  for (int K = 0; K <= 6; ++K) {
    for (const auto& l : basis::enumerate_tree_basis(K)) {
      Poly f = basis::tree_function(l);
      const double nrm = poly::norm(f);
      worst = std::max(worst, apply(poly::op_Lap6(), f).max_abs_coeff() / nrm);
      ++count;
    }
    for (const auto& f : sym_functions(K, true)) {
      const double nrm = poly::norm(f.func);
      worst = std::max(worst, apply(poly::op_Lap6(), f.func).max_abs_coeff() / nrm);
      ++count;
    }
  }
  const double secs = timer.seconds();
  report(1, "harmonicity of all tree and symmetrized functions, K <= 6",
         worst <= 1e-10 && secs <= 60.0,
         "functions=" + std::to_string(count) + " max=" + fmt(worst) +
             " time=" + fmt(secs) + "s");
}

void criterion2() {
  // K=1 multiplet: N = +-1/2, -L2 = 2, L3 = -M, Omega' = +-3/4, to 1e-12
  double worst = 0.0;
  for (int two_nu : {-1, 1}) {
    auto blk = transform::omega_block(1, 1, 0, two_nu);
    // use all three M values by rebuilding at each M
    for (int M = -1; M <= 1; ++M) {
      auto b = transform::omega_block(1, 1, M, two_nu);
      auto fns = transform::diagonalize_block(b);
      if (fns.size() != 1) {
        worst = 1.0;
        continue;
      }
      const Poly& f = fns[0].func;
      auto eig = [&](const poly::OperatorTag& op) {
        return poly::inner_product(apply(op, f), f);
      };
      worst = std::max(worst, std::abs(eig(poly::op_N()) - Complex(two_nu / 2.0, 0)));
      worst = std::max(worst, std::abs(-eig(poly::op_L2()) - Complex(2.0, 0)));
      worst = std::max(worst, std::abs(eig(poly::op_L3()) - Complex(-M, 0)));
      Poly omf = apply(poly::op_Omega(), f) * I;
      worst = std::max(worst,
                       std::abs(poly::inner_product(omf, f) - Complex(0.75 * two_nu, 0)));
    }
    (void)blk;
  }
  report(2, "K=1 multiplet eigenvalue table (N, -L2, L3, Omega')", worst <= 1e-12,
         "max deviation=" + fmt(worst));
}

void criterion3() {
  const long want[7] = {1, 6, 20, 50, 105, 196, 336};
  bool ok = true;
  for (int K = 0; K <= 6; ++K) {
    if (long(basis::enumerate_tree_basis(K).size()) != want[K]) ok = false;
    if (basis::degeneracy_total(K) != want[K]) ok = false;
    if (basis::harmonic_dimension(K) != want[K]) ok = false;
    long sum = 0;
    for (int two_nu = -K; two_nu <= K; two_nu += 2) sum += basis::degeneracy(K, two_nu);
    if (sum != want[K]) ok = false;
  }
  report(3, "degeneracy counts vs closed formulas and harmonic dimension", ok,
         ok ? "exact integer match for K=0..6" : "mismatch");
}

void criterion4() {
  Timer timer;
  std::vector<poly::Mono> monos;
  std::function<void(int, int, poly::Mono)> gen = [&](int var, int left, poly::Mono m) {
    if (var == 6) {
      monos.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[size_t(var)] = (unsigned char)e;
      gen(var + 1, left - e, m);
    }
  };
  for (int d = 0; d <= 4; ++d) gen(0, d, poly::Mono{});

  double worst = 0.0;
  for (const auto& m : monos) {
    Poly f;
    f.add_term(m, 1.0);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            Poly lhs = commutator(poly::op_B(i, k), poly::op_B(j, l), f);
            Poly rhs;
            if (k == j) rhs += apply(poly::op_L(i, l), f);
            if (k == l) rhs += apply(poly::op_L(i, j), f);
            if (i == j) rhs += apply(poly::op_L(k, l), f);
            if (i == l) rhs += apply(poly::op_L(k, j), f);
            rhs *= I * 0.5;
            worst = std::max(worst, (lhs - rhs).max_abs_coeff());
            Poly lhs2 = commutator(poly::op_B(i, k), poly::op_L(j, l), f);
            Poly rhs2;
            if (k == j) rhs2 += apply(poly::op_B(i, l), f);
            if (k == l) rhs2 -= apply(poly::op_B(i, j), f);
            if (i == j) rhs2 += apply(poly::op_B(k, l), f);
            if (i == l) rhs2 -= apply(poly::op_B(k, j), f);
            rhs2 *= I * 0.5;
            worst = std::max(worst, (lhs2 - rhs2).max_abs_coeff());
          }
    const std::pair<int, int> Lidx[3] = {{1, 2}, {2, 0}, {0, 1}};
    for (int c = 0; c < 3; ++c) {
      const auto [a1, a2] = Lidx[c];
      const auto [b1, b2] = Lidx[(c + 1) % 3];
      const auto [c1, c2] = Lidx[(c + 2) % 3];
      Poly lhs = commutator(poly::op_L(a1, a2), poly::op_L(b1, b2), f) * 4.0;
      lhs -= apply(poly::op_L(c1, c2), f) * (-2.0 * I);
      worst = std::max(worst, lhs.max_abs_coeff());
    }
  }
  report(4, "commutator closure on the full degree <= 4 monomial basis", worst <= 1e-11,
         "monomials=" + std::to_string(monos.size()) + " max=" + fmt(worst) +
             " time=" + fmt(timer.seconds()) + "s");
}

void criterion5() {
  Timer timer;
  double worst_pair = 0.0, worst_orth = 0.0, worst_k1 = 0.0;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> up(0.05, 1.5);
  for (int K = 0; K <= 4; ++K)
    for (int J = 0; J <= K; ++J) {
      if (basis::tree_pairs(K, J).empty()) continue;
      for (int rep = 0; rep < 3; ++rep) {
        const double phi = up(rng);
        auto a = transform::rotation_coefficient(K, J, 0, phi);
        auto b = transform::rotation_coefficient_dform(K, J, 0, phi);
        worst_pair = std::max(worst_pair, (a.matrix - b.matrix).cwiseAbs().maxCoeff());
        Eigen::MatrixXd orth =
            a.matrix.transpose() * a.matrix -
            Eigen::MatrixXd::Identity(a.matrix.rows(), a.matrix.cols());
        worst_orth = std::max(worst_orth, orth.cwiseAbs().maxCoeff());
      }
    }
  // K=1 block against the closed planar-rotation oracle
  for (double phi : {0.3, 0.7, 1.1}) {
    auto rc = transform::rotation_coefficient(1, 1, 1, phi);
    const double c = std::cos(phi), s = std::sin(phi);
    Eigen::Matrix2d want;
    want << c, -s, s, c;  // labels ordered (0,1), (1,0)
    worst_k1 = std::max(worst_k1, (rc.matrix - want).cwiseAbs().maxCoeff());
  }
  const bool pass = worst_pair <= 1e-10 && worst_orth <= 1e-10 && worst_k1 <= 1e-12;
  report(5, "rotation coefficients: dual routes, orthogonality, K=1 oracle", pass,
         "routes=" + fmt(worst_pair) + " orth=" + fmt(worst_orth) + " K1=" + fmt(worst_k1) +
             " time=" + fmt(timer.seconds()) + "s");
}

void criterion6() {
  Timer timer;
  double worst = 0.0;
  bool simple_ok = true, count_ok = true;
  for (int K = 0; K <= 6; ++K) {
    long total = 0;
    for (int J = 0; J <= K; ++J) {
      if (basis::tree_pairs(K, J).empty()) continue;
      for (int two_nu = -K; two_nu <= K; two_nu += 2) {
        if ((K - two_nu) % 2 != 0) continue;
        auto blk = transform::omega_block(K, J, 0, two_nu);
        auto fns = transform::diagonalize_block(blk);
        if (K < 4 && fns.size() > 1) simple_ok = false;
        total += long(fns.size()) * (2 * J + 1);
        for (auto& f : fns) {
          const double nrm = poly::norm(f.func);
          worst = std::max(worst, apply(poly::op_Lap6(), f.func).max_abs_coeff() / nrm);
          Poly l2 = apply(poly::op_L2(), f.func) +
                    f.func * Complex(double(J) * (J + 1), 0);
          worst = std::max(worst, poly::norm(l2) / nrm);
          worst = std::max(worst, poly::norm(apply(poly::op_L3(), f.func)) / nrm);
          Poly nf = apply(poly::op_N(), f.func) - f.func * Complex(two_nu / 2.0, 0);
          worst = std::max(worst, poly::norm(nf) / nrm);
          Poly om = apply(poly::op_Omega(), f.func) * I -
                    f.func * Complex(f.omega_eigenvalue, 0);
          worst = std::max(worst, poly::norm(om) / nrm);
        }
      }
    }
    if (total != basis::degeneracy_total(K)) count_ok = false;
  }
  // spot-check nonzero M blocks as well
  for (auto [K, J, M, two_nu] : {std::array<int, 4>{4, 2, 2, 0},
                                 std::array<int, 4>{3, 1, -1, 1},
                                 std::array<int, 4>{5, 2, 1, -1}}) {
    auto blk = transform::omega_block(K, J, M, two_nu);
    for (auto& f : transform::diagonalize_block(blk)) {
      const double nrm = poly::norm(f.func);
      worst = std::max(worst, apply(poly::op_Lap6(), f.func).max_abs_coeff() / nrm);
      Poly l3 = apply(poly::op_L3(), f.func) + f.func * Complex(double(M), 0);
      worst = std::max(worst, poly::norm(l3) / nrm);
      Poly om =
          apply(poly::op_Omega(), f.func) * I - f.func * Complex(f.omega_eigenvalue, 0);
      worst = std::max(worst, poly::norm(om) / nrm);
    }
  }
  report(6, "nu-split + Omega blocks: five eigenrelations, simplicity, counts",
         worst <= 1e-9 && simple_ok && count_ok,
         "max residual=" + fmt(worst) + (simple_ok ? "" : " K<4 degenerate!") +
             (count_ok ? "" : " count mismatch!") + " time=" + fmt(timer.seconds()) + "s");
}

void criterion7() {
  // J=0 expansion: coeff = alpha_K (-i)^j CG(K/4,-nu/2;K/4,nu/2|j0),
  // one fitted constant per K, relative residual <= 1e-8
  double worst = 0.0;
  std::ostringstream consts;
  for (int K = 0; K <= 4; K += 2) {
    Complex alpha(0, 0);
    for (int j = 0; 2 * j <= K; ++j) {
      auto coeffs = basis::j0_expansion_coeffs(K, j);
      const Complex phase = std::pow(-I, j);
      for (auto& c : coeffs) {
        if (std::abs(c.cg) < 1e-14) {
          worst = std::max(worst, std::abs(c.coeff));
          continue;
        }
        if (std::abs(alpha) == 0.0) alpha = c.coeff / (phase * c.cg);
        worst = std::max(worst, std::abs(c.coeff - alpha * phase * c.cg));
      }
    }
    consts << " alpha_" << K << "=(" << io::fmt17(alpha.real()) << ","
           << io::fmt17(alpha.imag()) << ")";
  }
  report(7, "J=0 sector CG proportionality with one constant per K", worst <= 1e-8,
         "max residual=" + fmt(worst) + ", fitted:" + consts.str());
}

void criterion8() {
  Timer timer;
  std::ostringstream detail;
  bool pass = true;

  // free motion: energy, |L|, classical Omega conserved over t = 100
  dyn::DynState s0;
  s0.a = 0.85;
  s0.lambda = 0.4;
  s0.phi1 = 0.2;
  s0.theta = 1.15;
  s0.phi2 = -0.3;
  s0.rho = 1.25;
  s0.da = 0.11;
  s0.dlambda = -0.17;
  s0.dphi1 = 0.13;
  s0.dtheta = 0.07;
  s0.dphi2 = -0.09;
  s0.drho = 0.05;
  auto free_run = dyn::simulate(dyn::Scenario::Free, s0, {}, 100.0, 1e-10, 5.0);
  if (free_run.singular_event) {
    pass = false;
    detail << " free: singular event!";
  } else {
    const double e0 = free_run.rows.front().energy;
    const double L0 = free_run.rows.front().Lnorm;
    const double om0 = free_run.rows.front().omega_cl;
    double de = 0, dL = 0, dom = 0;
    for (auto& r : free_run.rows) {
      de = std::max(de, std::abs(r.energy - e0) / std::abs(e0));
      dL = std::max(dL, std::abs(r.Lnorm - L0) / std::abs(L0));
      dom = std::max(dom, std::abs(r.omega_cl - om0) / std::max(1.0, std::abs(om0)));
    }
    pass = pass && de <= 1e-8 && dL <= 1e-8 && dom <= 1e-8;
    detail << " dE=" << fmt(de) << " dL=" << fmt(dL) << " dOm=" << fmt(dom);
  }

  // Cartesian straight-line oracle
  {
    kin::Vec3 xi0, eta0, dxi0, deta0;
    dyn::jacobi_view(s0, xi0, eta0, dxi0, deta0);
    auto run = dyn::simulate(dyn::Scenario::Free, s0, {}, 10.0, 1e-12, 1.0);
    double dev = 0.0;
    for (auto& r : run.rows) {
      kin::Vec3 xi, eta, dxi, deta;
      dyn::jacobi_view(r.s, xi, eta, dxi, deta);
      dev = std::max(dev, (xi - (xi0 + r.t * dxi0)).norm());
      dev = std::max(dev, (eta - (eta0 + r.t * deta0)).norm());
    }
    pass = pass && dev <= 1e-6;
    detail << " cart=" << fmt(dev);
  }

  // Kepler circular: radius drift over 10 periods
  {
    dyn::DynState k0;
    k0.rho = 1.0;
    k0.dphi1 = std::sqrt(3.0);
    k0.theta = M_PI / 2;
    const double period = 2 * M_PI / std::sqrt(3.0);
    auto run = dyn::simulate(dyn::Scenario::Kepler, k0, {dyn::PotentialSpec::Newton, 0},
                             10 * period, 1e-10, period / 8);
    double drift = 0.0;
    for (auto& r : run.rows) drift = std::max(drift, std::abs(r.s.rho - 1.0));
    pass = pass && drift <= 1e-6;
    detail << " circ=" << fmt(drift);
  }

  // elliptic orbit: conic-section fit of (rho, psi) and of particle 1
  {
    dyn::DynState k0;
    k0.rho = 1.0;
    k0.dphi1 = 1.15 * std::sqrt(3.0);
    k0.theta = M_PI / 2;
    auto run = dyn::simulate(dyn::Scenario::Kepler, k0, {dyn::PotentialSpec::Newton, 0},
                             15.0, 1e-11, 0.05);
    const int n = int(run.rows.size());
    // orbital-plane basis from the conserved angular momentum direction
    const Eigen::Vector3d Lhat = dyn::angular_momentum(run.rows.front().s).normalized();
    Eigen::Vector3d u = Lhat.unitOrthogonal();
    Eigen::Vector3d v = Lhat.cross(u);
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    Eigen::MatrixXd A1(n, 3);
    Eigen::VectorXd b1(n);
    for (int i = 0; i < n; ++i) {
      const auto& r = run.rows[size_t(i)];
      const double psi = 0.5 * r.s.lambda + r.s.phi1;
      A(i, 0) = 1;
      A(i, 1) = std::cos(psi);
      A(i, 2) = std::sin(psi);
      b(i) = 1.0 / r.s.rho;
      // particle 1 from the reconstructed configuration
      kin::Vec3 xi, eta, dxi, deta;
      dyn::jacobi_view(r.s, xi, eta, dxi, deta);
      auto cfg = kin::particle_positions({xi, eta});
      const double r1 = cfg.x1.norm();
      const double ang = std::atan2(cfg.x1.dot(v), cfg.x1.dot(u));
      A1(i, 0) = 1;
      A1(i, 1) = std::cos(ang);
      A1(i, 2) = std::sin(ang);
      b1(i) = 1.0 / r1;
    }
    const double res =
        (A * A.colPivHouseholderQr().solve(b) - b).cwiseAbs().maxCoeff();
    const double res1 =
        (A1 * A1.colPivHouseholderQr().solve(b1) - b1).cwiseAbs().maxCoeff();
    pass = pass && res <= 1e-6 && res1 <= 1e-6;
    detail << " conic=" << fmt(res) << " conic1=" << fmt(res1);
  }

  // harmonic equilibrium fixed point
  {
    dyn::DynState eq;
    eq.a = M_PI;
    eq.lambda = 0.0;
    eq.rho = 1.0;
    eq.theta = 1.0;
    auto qdd = dyn::eom_potential(eq, {dyn::PotentialSpec::Harmonic, 1.0});
    const double res = qdd.cwiseAbs().maxCoeff();
    pass = pass && res <= 1e-12;
    detail << " fixedpt=" << fmt(res);
  }

  const double secs = timer.seconds();
  pass = pass && secs <= 120.0;
  report(8, "classical dynamics conservation and orbit oracles", pass,
         detail.str() + " time=" + fmt(secs) + "s");
}

void criterion9() {
#ifdef HYPER3B_CLI_PATH
  auto runcli = [](const std::string& args, const std::string& out) {
    const std::string cmd =
        std::string(HYPER3B_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
    return std::system(cmd.c_str());
  };
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::ofstream init("/tmp/hyper3b_acc_init.json");
  init << "{\"a\":0.8,\"lambda\":0.3,\"theta\":1.2,\"rho\":1.1,\"da\":0.15,"
          "\"dphi1\":0.2,\"drho\":0.02}";
  init.close();
  bool ok = true;
  runcli("enumerate --K 4 --format json", "/tmp/hyper3b_acc_a1.txt");
  runcli("enumerate --K 4 --format json", "/tmp/hyper3b_acc_a2.txt");
  ok = ok && slurp("/tmp/hyper3b_acc_a1.txt") == slurp("/tmp/hyper3b_acc_a2.txt");
  runcli(
      "simulate free --init /tmp/hyper3b_acc_init.json --t-end 3 --tol 1e-10 --out "
      "/tmp/hyper3b_acc_t1.csv",
      "/tmp/hyper3b_acc_r1.txt");
  runcli(
      "simulate free --init /tmp/hyper3b_acc_init.json --t-end 3 --tol 1e-10 --out "
      "/tmp/hyper3b_acc_t2.csv",
      "/tmp/hyper3b_acc_r2.txt");
  const std::string t1 = slurp("/tmp/hyper3b_acc_t1.csv");
  ok = ok && !t1.empty() && t1 == slurp("/tmp/hyper3b_acc_t2.csv");
  runcli("transform omega --K 4 --J 2 --nu 0 --format json", "/tmp/hyper3b_acc_o1.txt");
  runcli("transform omega --K 4 --J 2 --nu 0 --format json", "/tmp/hyper3b_acc_o2.txt");
  ok = ok && slurp("/tmp/hyper3b_acc_o1.txt") == slurp("/tmp/hyper3b_acc_o2.txt");
  report(9, "repeated CLI runs produce byte-identical exports", ok,
         ok ? "json + csv exports identical" : "outputs differ");
#else
  report(9, "repeated CLI runs produce byte-identical exports", false, "CLI path not set");
#endif
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
