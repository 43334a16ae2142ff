// hyper3b command line tool: basis enumeration, verification suites,
// transformation coefficients, classical simulation, machine-readable export.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "hyper3b/basis.hpp"
#include "hyper3b/coupling.hpp"
#include "hyper3b/dynamics.hpp"
#include "hyper3b/io.hpp"
#include "hyper3b/kinematics.hpp"
#include "hyper3b/polyops.hpp"
#include "hyper3b/special_functions.hpp"
#include "hyper3b/transform.hpp"

using nlohmann::json;
using namespace hyper3b;

namespace {

int resolve_jobs(int cli_jobs) {
  if (cli_jobs > 0) return cli_jobs;
  if (const char* env = std::getenv("HYPER3B_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

template <typename F>
void parallel_for(int n, int jobs, F&& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

struct VerifyReport {
  std::string suite;
  long checks = 0;
  double max_residual = 0.0;
  std::string worst;
  bool pass = false;
  double tol = 0.0;

  std::string to_json_str() const {
    json j{{"suite", suite},        {"checks", checks}, {"max_residual", max_residual},
           {"worst", worst},        {"pass", pass},     {"tol", tol}};
    return j.dump(2) + "\n";
  }
  std::string to_csv_str() const {
    std::ostringstream os;
    os << "suite,checks,max_residual,worst,pass,tol\n";
    os << suite << ',' << checks << ',' << io::fmt17(max_residual) << ",\"" << worst << "\","
       << (pass ? 1 : 0) << ',' << io::fmt17(tol) << '\n';
    return os.str();
  }
};

struct ResidualTracker {
  double max_res = 0.0;
  std::string worst;
  long checks = 0;
  void update(double r, const std::string& what) {
    ++checks;
    if (r > max_res) {
      max_res = r;
      worst = what;
    }
  }
};

VerifyReport verify_harmonicity(int kmax, double tol, int jobs) {
  std::vector<basis::TreeLabel> labels;
  for (int K = 0; K <= kmax; ++K)
    for (auto& l : basis::enumerate_tree_basis(K)) labels.push_back(l);
  std::vector<double> res(labels.size(), 0.0);
  parallel_for(int(labels.size()), jobs, [&](int i) {
    poly::Poly f = basis::tree_function(labels[size_t(i)]);
    poly::Poly h = apply(poly::op_Lap6(), f);
    res[size_t(i)] = h.max_abs_coeff() / std::max(1e-300, f.max_abs_coeff());
  });
  ResidualTracker tr;
  for (size_t i = 0; i < labels.size(); ++i) {
    const auto& l = labels[i];
    std::ostringstream os;
    os << "tree(K=" << l.K << ",j1=" << l.j1 << ",j2=" << l.j2 << ",J=" << l.J
       << ",M=" << l.M << ")";
    tr.update(res[i], os.str());
  }
  // symmetrized functions (M = 0 blocks)
  struct Blk {
    int K, J, two_nu;
  };
  std::vector<Blk> blocks;
  for (int K = 0; K <= kmax; ++K)
    for (int J = 0; J <= K; ++J) {
      if (basis::tree_pairs(K, J).empty()) continue;
      for (int two_nu = -K; two_nu <= K; two_nu += 2)
        if ((K - two_nu) % 2 == 0) blocks.push_back({K, J, two_nu});
    }
  std::vector<double> bres(blocks.size(), 0.0);
  parallel_for(int(blocks.size()), jobs, [&](int i) {
    const auto [K, J, two_nu] = blocks[size_t(i)];
    auto blk = transform::omega_block(K, J, 0, two_nu);
    double r = 0.0;
    for (auto& f : transform::diagonalize_block(blk))
      r = std::max(r, apply(poly::op_Lap6(), f.func).max_abs_coeff() /
                          std::max(1e-300, f.func.max_abs_coeff()));
    bres[size_t(i)] = r;
  });
  for (size_t i = 0; i < blocks.size(); ++i) {
    std::ostringstream os;
    os << "sym(K=" << blocks[i].K << ",J=" << blocks[i].J << ",2nu=" << blocks[i].two_nu
       << ")";
    tr.update(bres[i], os.str());
  }
  return {"harmonicity", tr.checks, tr.max_res, tr.worst, tr.max_res <= tol, tol};
}

VerifyReport verify_commutators(int kmax, double tol, int jobs) {
  // exact operator identities on the full monomial basis of degree <= kmax
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
  for (int d = 0; d <= kmax; ++d) gen(0, d, poly::Mono{});

  ResidualTracker tr;
  std::mutex mu;
  parallel_for(int(monos.size()), jobs, [&](int mi) {
    poly::Poly f;
    f.add_term(monos[size_t(mi)], 1.0);
    double local = 0.0;
    const std::complex<double> I(0, 1);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
          for (int l = 0; l < 3; ++l) {
            // [B_ik, B_jl] = i/2 (d_kj L_il + d_kl L_ij + d_ij L_kl + d_il L_kj)
            poly::Poly lhs = commutator(poly::op_B(i, k), poly::op_B(j, l), f);
            poly::Poly rhs;
            if (k == j) rhs += apply(poly::op_L(i, l), f);
            if (k == l) rhs += apply(poly::op_L(i, j), f);
            if (i == j) rhs += apply(poly::op_L(k, l), f);
            if (i == l) rhs += apply(poly::op_L(k, j), f);
            rhs *= I * 0.5;
            lhs -= rhs;
            local = std::max(local, lhs.max_abs_coeff());
            // [B_ik, L_jl] = i/2 (d_kj B_il - d_kl B_ij + d_ij B_kl - d_il B_kj)
            poly::Poly lhs2 = commutator(poly::op_B(i, k), poly::op_L(j, l), f);
            poly::Poly rhs2;
            if (k == j) rhs2 += apply(poly::op_B(i, l), f);
            if (k == l) rhs2 -= apply(poly::op_B(i, j), f);
            if (i == j) rhs2 += apply(poly::op_B(k, l), f);
            if (i == l) rhs2 -= apply(poly::op_B(k, j), f);
            rhs2 *= I * 0.5;
            lhs2 -= rhs2;
            local = std::max(local, lhs2.max_abs_coeff());
          }
    // [L1,L2] = -iL3 cyclic with L1 = 2 L_23, L2 = 2 L_31, L3 = 2 L_12
    const std::pair<int, int> Lidx[3] = {{1, 2}, {2, 0}, {0, 1}};
    for (int c = 0; c < 3; ++c) {
      const auto [a1, a2] = Lidx[c];
      const auto [b1, b2] = Lidx[(c + 1) % 3];
      const auto [c1, c2] = Lidx[(c + 2) % 3];
      poly::Poly lhs = commutator(poly::op_L(a1, a2), poly::op_L(b1, b2), f) * 4.0;
      lhs -= apply(poly::op_L(c1, c2), f) * (-2.0 * I);
      local = std::max(local, lhs.max_abs_coeff());
    }
    std::lock_guard lock(mu);
    tr.update(local, "monomial basis");
  });
  return {"commutators", tr.checks, tr.max_res, tr.worst, tr.max_res <= tol, tol};
}

VerifyReport verify_orthonormality(int kmax, double tol, int jobs) {
  struct Task {
    int K, J, M;
  };
  std::vector<Task> tasks;
  for (int K = 0; K <= kmax; ++K)
    for (int J = 0; J <= K; ++J)
      for (int M = -J; M <= J; ++M)
        if (!basis::tree_pairs(K, J).empty()) tasks.push_back({K, J, M});
  std::vector<double> res(tasks.size(), 0.0);
  parallel_for(int(tasks.size()), jobs, [&](int i) {
    const auto [K, J, M] = tasks[size_t(i)];
    auto pairs = basis::tree_pairs(K, J);
    std::vector<poly::Poly> fs;
    for (auto& [j1, j2] : pairs) fs.push_back(basis::tree_function({K, j1, j2, J, M}));
    double r = 0.0;
    for (size_t s = 0; s < fs.size(); ++s)
      for (size_t t = 0; t < fs.size(); ++t) {
        const std::complex<double> g = poly::inner_product(fs[s], fs[t]);
        const double want = (s == t) ? 1.0 : 0.0;
        r = std::max(r, std::abs(g - want));
      }
    res[size_t(i)] = r;
  });
  ResidualTracker tr;
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::ostringstream os;
    os << "gram(K=" << tasks[i].K << ",J=" << tasks[i].J << ",M=" << tasks[i].M << ")";
    tr.update(res[i], os.str());
  }
  return {"orthonormality", tr.checks, tr.max_res, tr.worst, tr.max_res <= tol, tol};
}

VerifyReport verify_transform(int kmax, double tol, int jobs) {
  struct Task {
    int K, J;
    double phi;
  };
  std::vector<Task> tasks;
  const double phis[3] = {0.3, 0.7, M_PI / 4};
  for (int K = 0; K <= kmax; ++K)
    for (int J = 0; J <= K; ++J)
      if (!basis::tree_pairs(K, J).empty())
        for (double p : phis) tasks.push_back({K, J, p});
  std::vector<double> res(tasks.size(), 0.0);
  parallel_for(int(tasks.size()), jobs, [&](int i) {
    const auto [K, J, phi] = tasks[size_t(i)];
    auto a = transform::rotation_coefficient(K, J, 0, phi);
    auto b = transform::rotation_coefficient_dform(K, J, 0, phi);
    double r = (a.matrix - b.matrix).cwiseAbs().maxCoeff();
    Eigen::MatrixXd orth =
        a.matrix.transpose() * a.matrix - Eigen::MatrixXd::Identity(a.matrix.rows(), a.matrix.cols());
    r = std::max(r, orth.cwiseAbs().maxCoeff());
    res[size_t(i)] = r;
  });
  ResidualTracker tr;
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::ostringstream os;
    os << "coeff(K=" << tasks[i].K << ",J=" << tasks[i].J << ",phi=" << tasks[i].phi << ")";
    tr.update(res[i], os.str());
  }
  return {"transform", tr.checks, tr.max_res, tr.worst, tr.max_res <= tol, tol};
}

VerifyReport verify_omega(int kmax, double tol, int jobs) {
  struct Task {
    int K, J, M, two_nu;
  };
  std::vector<Task> tasks;
  for (int K = 0; K <= kmax; ++K)
    for (int J = 0; J <= K; ++J) {
      if (basis::tree_pairs(K, J).empty()) continue;
      for (int two_nu = -K; two_nu <= K; two_nu += 2) {
        if ((K - two_nu) % 2 != 0) continue;
        tasks.push_back({K, J, 0, two_nu});
      }
    }
  std::vector<double> res(tasks.size(), 0.0);
  std::vector<int> dims(tasks.size(), 0);
  parallel_for(int(tasks.size()), jobs, [&](int i) {
    const auto [K, J, M, two_nu] = tasks[size_t(i)];
    auto blk = transform::omega_block(K, J, M, two_nu);
    auto fns = transform::diagonalize_block(blk);
    dims[size_t(i)] = int(fns.size());
    double r = 0.0;
    for (auto& f : fns) {
      poly::Poly g = apply(poly::op_Omega(), f.func) * std::complex<double>(0, 1);
      g -= f.func * std::complex<double>(f.omega_eigenvalue, 0);
      r = std::max(r, poly::norm(g));
    }
    res[size_t(i)] = r;
  });
  ResidualTracker tr;
  bool simple_ok = true;
  std::map<int, long> counts;
  for (size_t i = 0; i < tasks.size(); ++i) {
    std::ostringstream os;
    os << "omega(K=" << tasks[i].K << ",J=" << tasks[i].J << ",2nu=" << tasks[i].two_nu
       << ")";
    tr.update(res[i], os.str());
    if (tasks[i].K < 4 && dims[i] > 1) simple_ok = false;
    counts[tasks[i].K] += long(dims[i]) * (2 * tasks[i].J + 1);
  }
  bool count_ok = true;
  for (auto& [K, n] : counts)
    if (n != basis::degeneracy_total(K)) count_ok = false;
  VerifyReport rep{"omega", tr.checks, tr.max_res, tr.worst,
                   tr.max_res <= tol && simple_ok && count_ok, tol};
  if (!simple_ok) rep.worst = "K<4 block not one-dimensional";
  if (!count_ok) rep.worst = "block dimensions do not sum to n(K)";
  return rep;
}

VerifyReport verify_dynamics(int, double tol, int) {
  ResidualTracker tr;
  // free motion conservation over a moderate window
  dyn::DynState s0;
  s0.a = 0.9;
  s0.lambda = 0.4;
  s0.phi1 = 0.2;
  s0.theta = 1.1;
  s0.phi2 = 0.5;
  s0.rho = 1.3;
  s0.da = 0.21;
  s0.dlambda = -0.35;
  s0.dphi1 = 0.18;
  s0.dtheta = 0.12;
  s0.dphi2 = -0.2;
  s0.drho = 0.05;
  auto r = dyn::simulate(dyn::Scenario::Free, s0, {}, 10.0, 1e-11, 1.0);
  const double e0 = r.rows.front().energy;
  for (auto& row : r.rows)
    tr.update(std::abs(row.energy - e0) / std::abs(e0), "free energy drift");
  // kepler circular
  dyn::DynState k0;
  k0.rho = 1.0;
  k0.dphi1 = std::sqrt(3.0);
  k0.theta = M_PI / 2;
  auto rk = dyn::simulate(dyn::Scenario::Kepler, k0, {dyn::PotentialSpec::Newton, 0}, 10.0,
                          1e-11, 1.0);
  for (auto& row : rk.rows) tr.update(std::abs(row.s.rho - 1.0), "kepler radius drift");
  return {"dynamics", tr.checks, tr.max_res, tr.worst, tr.max_res <= tol, tol};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperspherical three-body basis toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  int jobs_flag = 0;
  app.add_option("--config", config_path, "JSON config file (K-max, tolerances)");
  app.add_option("--jobs,-j", jobs_flag, "parallel workers for verification");

  int cfg_kmax = 8;
  double cfg_tol = 1e-10;

  // ---- enumerate ----
  auto* cmd_enum = app.add_subcommand("enumerate", "list tree labels and degeneracies");
  cmd_enum->fallthrough();
  int en_K = 0;
  double en_nu = 1e99;
  std::string en_format = "table";
  cmd_enum->add_option("--K", en_K, "hyperspherical order")->required();
  cmd_enum->add_option("--nu", en_nu, "restrict to a nu value (half-integers allowed)");
  cmd_enum->add_option("--format", en_format, "table|json|csv");

  // ---- basis ----
  auto* cmd_basis = app.add_subcommand("basis", "construct tree functions and dump them");
  cmd_basis->fallthrough();
  int ba_K = 0;
  std::string ba_outdir = ".";
  cmd_basis->add_option("--K", ba_K, "hyperspherical order")->required();
  cmd_basis->add_option("--out-dir", ba_outdir, "directory for polynomial dumps");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  cmd_verify->fallthrough();
  std::string vf_suite;
  int vf_kmax = -1;
  double vf_tol = -1.0;
  std::string vf_format = "json";
  cmd_verify->add_option("suite", vf_suite,
                         "harmonicity|commutators|orthonormality|transform|omega|dynamics")
      ->required();
  cmd_verify->add_option("--K-max", vf_kmax, "maximum K");
  cmd_verify->add_option("--tol", vf_tol, "tolerance");
  cmd_verify->add_option("--format", vf_format, "json|csv");

  // ---- transform ----
  auto* cmd_tr = app.add_subcommand("transform", "transformation coefficients");
  cmd_tr->fallthrough();
  auto* tr_coeffs = cmd_tr->add_subcommand("coeffs", "rotation coefficient matrix");
  tr_coeffs->fallthrough();
  int tc_K = 0, tc_J = 0, tc_M = 0;
  double tc_phi = 0.0;
  std::string tc_format = "json";
  tr_coeffs->add_option("--K", tc_K)->required();
  tr_coeffs->add_option("--J", tc_J)->required();
  tr_coeffs->add_option("--M", tc_M);
  tr_coeffs->add_option("--phi", tc_phi)->required();
  tr_coeffs->add_option("--format", tc_format, "json|csv");
  auto* tr_omega = cmd_tr->add_subcommand("omega", "Omega' block eigenvalues");
  tr_omega->fallthrough();
  int to_K = 0, to_J = 0;
  double to_nu = 0.0;
  std::string to_format = "json";
  tr_omega->add_option("--K", to_K)->required();
  tr_omega->add_option("--J", to_J)->required();
  tr_omega->add_option("--nu", to_nu)->required();
  tr_omega->add_option("--format", to_format, "json|csv");

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand("simulate", "integrate the classical motion");
  cmd_sim->fallthrough();
  std::string sim_kind, sim_init, sim_out = "traj.csv";
  double sim_tend = 10.0, sim_tol = 1e-10, sim_rho0 = 1.0, sim_dt = -1.0;
  cmd_sim->add_option("kind", sim_kind, "free|planar|deforming|harmonic|kepler")->required();
  cmd_sim->add_option("--init", sim_init, "initial state JSON file")->required();
  cmd_sim->add_option("--t-end", sim_tend, "integration time")->required();
  cmd_sim->add_option("--tol", sim_tol, "integrator tolerance");
  cmd_sim->add_option("--out", sim_out, "output CSV path");
  cmd_sim->add_option("--rho0", sim_rho0, "harmonic equilibrium size");
  cmd_sim->add_option("--sample-dt", sim_dt, "sample interval (default t_end/500)");

  // ---- export ----
  auto* cmd_exp = app.add_subcommand("export", "re-export or plot a trajectory CSV");
  cmd_exp->fallthrough();
  std::string ex_in, ex_plot, ex_out = "plot.svg", ex_format = "csv";
  cmd_exp->add_option("--in", ex_in, "input CSV")->required();
  cmd_exp->add_option("--plot", ex_plot, "column to plot (e.g. energy)");
  cmd_exp->add_option("--out", ex_out, "output path");
  cmd_exp->add_option("--format", ex_format, "csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      json cfg = json::parse(io::read_file(config_path));
      cfg_kmax = cfg.value("K_max", cfg_kmax);
      cfg_tol = cfg.value("tol", cfg_tol);
    }
    const int jobs = resolve_jobs(jobs_flag);

    if (*cmd_enum) {
      if (en_K < 0 || en_K > cfg_kmax) {
        std::cerr << "enumerate: K out of range [0, " << cfg_kmax << "]\n";
        return 2;
      }
      const bool nu_filter = en_nu < 1e98;
      if (!nu_filter) {
        auto labels = basis::enumerate_tree_basis(en_K);
        json rows = json::array();
        std::ostringstream csv;
        csv << "K,j1,j2,J,M\n";
        for (auto& l : labels) {
          rows.push_back({{"K", l.K}, {"j1", l.j1}, {"j2", l.j2}, {"J", l.J}, {"M", l.M}});
          csv << l.K << ',' << l.j1 << ',' << l.j2 << ',' << l.J << ',' << l.M << '\n';
        }
        if (en_format == "json") {
          json out{{"K", en_K},
                   {"count", labels.size()},
                   {"degeneracy_total", basis::degeneracy_total(en_K)},
                   {"labels", rows}};
          std::cout << out.dump(2) << "\n";
        } else if (en_format == "csv") {
          std::cout << csv.str();
        } else {
          std::cout << "K = " << en_K << ": " << labels.size() << " labels, n(K) = "
                    << basis::degeneracy_total(en_K) << "\n";
          for (auto& l : labels)
            std::cout << "  (j1=" << l.j1 << ", j2=" << l.j2 << ", J=" << l.J
                      << ", M=" << l.M << ")\n";
        }
        return 0;
      }
      // nu given: list the symmetrized labels (K, J, M, nu, omega_index)
      const int two_nu = int(std::llround(2 * en_nu));
      json rows = json::array();
      std::ostringstream csv;
      csv << "K,J,M,nu,omega_index,omega\n";
      long count = 0;
      for (int J = 0; J <= en_K; ++J) {
        if (basis::tree_pairs(en_K, J).empty()) continue;
        auto blk = transform::omega_block(en_K, J, 0, two_nu);
        auto fns = transform::diagonalize_block(blk);
        for (int M = -J; M <= J; ++M)
          for (auto& f : fns) {
            ++count;
            rows.push_back({{"K", en_K},
                            {"J", J},
                            {"M", M},
                            {"nu", en_nu},
                            {"omega_index", f.label.omega_index},
                            {"omega", f.omega_eigenvalue}});
            csv << en_K << ',' << J << ',' << M << ',' << en_nu << ','
                << f.label.omega_index << ',' << io::fmt17(f.omega_eigenvalue) << '\n';
          }
      }
      const long formula = basis::degeneracy(en_K, two_nu);
      if (en_format == "json") {
        json out{{"K", en_K},   {"nu", en_nu},          {"count", count},
                 {"n_K_nu", formula}, {"labels", rows}};
        std::cout << out.dump(2) << "\n";
      } else if (en_format == "csv") {
        std::cout << csv.str();
      } else {
        std::cout << "n(K=" << en_K << ", nu=" << en_nu << ") = " << formula << "\n";
        for (auto& r : rows)
          std::cout << "  (J=" << r["J"] << ", M=" << r["M"]
                    << ", omega_index=" << r["omega_index"] << ", omega=" << r["omega"]
                    << ")\n";
      }
      return 0;
    }

    if (*cmd_basis) {
      if (ba_K < 0 || ba_K > cfg_kmax) {
        std::cerr << "basis: K out of range\n";
        return 2;
      }
      json out = json::array();
      for (auto& l : basis::enumerate_tree_basis(ba_K)) {
        poly::Poly f = basis::tree_function(l);
        std::ostringstream name;
        name << "tree_K" << l.K << "_j1" << l.j1 << "_j2" << l.j2 << "_J" << l.J << "_M"
             << (l.M < 0 ? "m" : "") << std::abs(l.M) << ".poly";
        const std::string path = ba_outdir + "/" + name.str();
        io::write_file(path, f.dump());
        out.push_back({{"label",
                        {{"K", l.K}, {"j1", l.j1}, {"j2", l.j2}, {"J", l.J}, {"M", l.M}}},
                       {"norm", basis::tree_norm(l.K, l.j1, l.j2)},
                       {"polynomial", path}});
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*cmd_verify) {
      const int kmax = vf_kmax >= 0 ? vf_kmax : std::min(cfg_kmax, 4);
      const double tol = vf_tol > 0 ? vf_tol : cfg_tol;
      VerifyReport rep;
      if (vf_suite == "harmonicity")
        rep = verify_harmonicity(kmax, tol, jobs);
      else if (vf_suite == "commutators")
        rep = verify_commutators(kmax, std::max(tol, 1e-11), jobs);
      else if (vf_suite == "orthonormality")
        rep = verify_orthonormality(kmax, tol, jobs);
      else if (vf_suite == "transform")
        rep = verify_transform(kmax, tol, jobs);
      else if (vf_suite == "omega")
        rep = verify_omega(kmax, std::max(tol, 1e-9), jobs);
      else if (vf_suite == "dynamics")
        rep = verify_dynamics(kmax, std::max(tol, 1e-8), jobs);
      else {
        std::cerr << "verify: unknown suite '" << vf_suite << "'\n";
        return 2;
      }
      std::cout << (vf_format == "csv" ? rep.to_csv_str() : rep.to_json_str());
      return rep.pass ? 0 : 1;
    }

    if (*cmd_tr) {
      if (*tr_coeffs) {
        auto rc = transform::rotation_coefficient(tc_K, tc_J, tc_M, tc_phi);
        if (tc_format == "csv") {
          std::ostringstream os;
          os << "j1p,j2p,j1,j2,value\n";
          for (int r = 0; r < rc.matrix.rows(); ++r)
            for (int c = 0; c < rc.matrix.cols(); ++c)
              os << rc.labels[size_t(r)].first << ',' << rc.labels[size_t(r)].second << ','
                 << rc.labels[size_t(c)].first << ',' << rc.labels[size_t(c)].second << ','
                 << io::fmt17(rc.matrix(r, c)) << '\n';
          std::cout << os.str();
        } else {
          json out{{"K", rc.K}, {"J", rc.J}, {"M", rc.M}, {"phi", rc.phi}};
          json labs = json::array(), mat = json::array();
          for (auto& [a, b] : rc.labels) labs.push_back({a, b});
          for (int r = 0; r < rc.matrix.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < rc.matrix.cols(); ++c) row.push_back(rc.matrix(r, c));
            mat.push_back(row);
          }
          out["labels"] = labs;
          out["matrix"] = mat;
          std::cout << out.dump(2) << "\n";
        }
        return 0;
      }
      if (*tr_omega) {
        const int two_nu = int(std::llround(2 * to_nu));
        auto blk = transform::omega_block(to_K, to_J, 0, two_nu);
        auto fns = transform::diagonalize_block(blk);
        json out{{"K", to_K}, {"J", to_J}, {"nu", to_nu}, {"dimension", fns.size()}};
        json evs = json::array(), comps = json::array();
        for (auto& f : fns) {
          evs.push_back(f.omega_eigenvalue);
          json c = json::array();
          for (int i = 0; i < f.components.size(); ++i)
            c.push_back({f.components(i).real(), f.components(i).imag()});
          comps.push_back(c);
        }
        json tags = json::array();
        for (auto& [a, b] : blk.tags) tags.push_back({a, b});
        out["eigenvalues"] = evs;
        out["tags"] = tags;
        out["components"] = comps;
        if (to_format == "csv") {
          std::ostringstream os;
          os << "index,eigenvalue\n";
          for (size_t i = 0; i < fns.size(); ++i)
            os << i << ',' << io::fmt17(fns[i].omega_eigenvalue) << '\n';
          std::cout << os.str();
        } else {
          std::cout << out.dump(2) << "\n";
        }
        return 0;
      }
      std::cerr << "transform: choose a subcommand (coeffs|omega)\n";
      return 2;
    }

    if (*cmd_sim) {
      dyn::Scenario sc;
      dyn::PotentialSpec pot{};
      if (sim_kind == "free")
        sc = dyn::Scenario::Free;
      else if (sim_kind == "planar")
        sc = dyn::Scenario::Planar;
      else if (sim_kind == "deforming")
        sc = dyn::Scenario::Deforming;
      else if (sim_kind == "harmonic") {
        sc = dyn::Scenario::HarmonicPot;
        pot = {dyn::PotentialSpec::Harmonic, sim_rho0};
      } else if (sim_kind == "kepler") {
        sc = dyn::Scenario::Kepler;
        pot = {dyn::PotentialSpec::Newton, 0.0};
      } else {
        std::cerr << "simulate: unknown kind '" << sim_kind << "'\n";
        return 2;
      }
      if (!(sim_tol > 0) || !(sim_tend > 0)) {
        std::cerr << "simulate: t-end and tol must be positive\n";
        return 2;
      }
      dyn::DynState s0 = io::dyn_state_from_json(io::read_file(sim_init));
      const double dt = sim_dt > 0 ? sim_dt : sim_tend / 500.0;
      auto result = dyn::simulate(sc, s0, pot, sim_tend, sim_tol, dt);
      io::write_file(sim_out, io::trajectory_csv(result));
      json rep{{"rows", result.rows.size()},
               {"singular_event", result.singular_event},
               {"chart", result.chart},
               {"out", sim_out}};
      if (!result.rows.empty()) {
        const double e0 = result.rows.front().energy;
        double drift = 0.0, rmin = 1e300, rmax = 0.0;
        for (auto& r : result.rows) {
          drift = std::max(drift, std::abs(r.energy - e0));
          rmin = std::min(rmin, r.s.rho);
          rmax = std::max(rmax, r.s.rho);
        }
        rep["energy_drift"] = drift;
        rep["rho_min"] = rmin;
        rep["rho_max"] = rmax;
      }
      std::cout << rep.dump(2) << "\n";
      return 0;
    }

    if (*cmd_exp) {
      const std::string text = io::read_file(ex_in);
      std::istringstream is(text);
      std::string header;
      std::getline(is, header);
      std::vector<std::string> cols;
      {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
      }
      std::vector<std::vector<double>> data(cols.size());
      std::string line;
      while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        size_t ci = 0;
        while (std::getline(ls, cell, ',') && ci < cols.size())
          data[ci++].push_back(std::strtod(cell.c_str(), nullptr));
      }
      if (!ex_plot.empty()) {
        size_t idx = cols.size();
        for (size_t i = 0; i < cols.size(); ++i)
          if (cols[i] == ex_plot) idx = i;
        if (idx == cols.size()) {
          std::cerr << "export: column '" << ex_plot << "' not found\n";
          return 2;
        }
        io::write_file(ex_out, io::svg_line_plot(data[0], data[idx], ex_plot));
        std::cout << "{\"plot\": \"" << ex_out << "\"}\n";
        return 0;
      }
      if (ex_format == "json") {
        json out = json::object();
        for (size_t i = 0; i < cols.size(); ++i) out[cols[i]] = data[i];
        io::write_file(ex_out, out.dump());
      } else {
        io::write_file(ex_out, text);
      }
      std::cout << "{\"out\": \"" << ex_out << "\"}\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
