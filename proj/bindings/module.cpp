// Python bindings for the main operations: special functions, recoupling
// coefficients, the tree basis, transformation coefficients and the
// classical-motion integrator.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "hyper3b/basis.hpp"
#include "hyper3b/coupling.hpp"
#include "hyper3b/dynamics.hpp"
#include "hyper3b/io.hpp"
#include "hyper3b/kinematics.hpp"
#include "hyper3b/polyops.hpp"
#include "hyper3b/special_functions.hpp"
#include "hyper3b/transform.hpp"

namespace py = pybind11;
using namespace hyper3b;

namespace {

poly::OperatorTag op_by_name(const std::string& name, int i, int k) {
  if (name == "A") return poly::op_A(i, k);
  if (name == "L") return poly::op_L(i, k);
  if (name == "B") return poly::op_B(i, k);
  if (name == "N") return poly::op_N();
  if (name == "Lap6") return poly::op_Lap6();
  if (name == "L2") return poly::op_L2();
  if (name == "L3") return poly::op_L3();
  if (name == "Omega") return poly::op_Omega();
  throw std::invalid_argument("unknown operator: " + name);
}

dyn::Scenario scenario_by_name(const std::string& name) {
  if (name == "free") return dyn::Scenario::Free;
  if (name == "planar") return dyn::Scenario::Planar;
  if (name == "deforming") return dyn::Scenario::Deforming;
  if (name == "harmonic") return dyn::Scenario::HarmonicPot;
  if (name == "kepler") return dyn::Scenario::Kepler;
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace

PYBIND11_MODULE(_hyper3b, m) {
  m.doc() = "hyperspherical three-body basis toolkit";

  // ---- special functions ----
  m.def("jacobi_poly",
        [](double alpha, double beta, int n, double x) {
          return sf::jacobi_poly({alpha, beta, n}, x);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("n"), py::arg("x"));
  m.def("gegenbauer_poly", &sf::gegenbauer_poly, py::arg("lam"), py::arg("n"),
        py::arg("x"));
  m.def("wigner_small_d", &sf::wigner_small_d, py::arg("two_j"), py::arg("two_m"),
        py::arg("two_n"), py::arg("beta"));
  m.def("wigner_D", &sf::wigner_D, py::arg("two_j"), py::arg("two_m"), py::arg("two_n"),
        py::arg("phi1"), py::arg("theta"), py::arg("phi2"));
  m.def("delta_pi_half", &sf::delta_pi_half);
  m.def("delta_pi_half_tilde", &sf::delta_pi_half_tilde);

  // ---- coupling ----
  m.def("clebsch_gordan", &coupling::clebsch_gordan, py::arg("two_j1"), py::arg("two_m1"),
        py::arg("two_j2"), py::arg("two_m2"), py::arg("two_J"), py::arg("two_M"));
  m.def("wigner_3j", &coupling::wigner_3j);
  m.def("wigner_6j", &coupling::wigner_6j);
  m.def("wigner_9j", &coupling::wigner_9j);
  m.def("double_brace", &coupling::double_brace);

  // ---- polynomial engine ----
  py::class_<poly::Poly>(m, "Poly")
      .def(py::init<>())
      .def_static("parse", &poly::Poly::parse)
      .def("dump", &poly::Poly::dump)
      .def("size", &poly::Poly::size)
      .def("max_abs_coeff", &poly::Poly::max_abs_coeff)
      .def("eval",
           [](const poly::Poly& p, const std::vector<std::complex<double>>& x) {
             if (x.size() != 6) throw std::invalid_argument("eval needs 6 values");
             std::array<std::complex<double>, 6> a;
             std::copy(x.begin(), x.end(), a.begin());
             return p.eval(a);
           })
      .def("__add__", [](const poly::Poly& a, const poly::Poly& b) { return a + b; })
      .def("__sub__", [](const poly::Poly& a, const poly::Poly& b) { return a - b; })
      .def("__mul__", [](const poly::Poly& a, std::complex<double> c) { return a * c; });
  m.def("apply_operator",
        [](const std::string& name, const poly::Poly& f, int i, int k) {
          return apply(op_by_name(name, i, k), f);
        },
        py::arg("name"), py::arg("f"), py::arg("i") = 0, py::arg("k") = 0);
  m.def("inner_product", &poly::inner_product);
  m.def("poly_norm", &poly::norm);

  // ---- basis ----
  m.def("enumerate_tree_basis", [](int K) {
    std::vector<std::tuple<int, int, int, int, int>> out;
    for (auto& l : basis::enumerate_tree_basis(K))
      out.emplace_back(l.K, l.j1, l.j2, l.J, l.M);
    return out;
  });
  m.def("degeneracy", &basis::degeneracy, py::arg("K"), py::arg("two_nu"));
  m.def("degeneracy_total", &basis::degeneracy_total);
  m.def("harmonic_dimension", &basis::harmonic_dimension);
  m.def("tree_norm", &basis::tree_norm);
  m.def("tree_function",
        [](int K, int j1, int j2, int J, int M) {
          return basis::tree_function({K, j1, j2, J, M});
        },
        py::arg("K"), py::arg("j1"), py::arg("j2"), py::arg("J"), py::arg("M"));
  m.def("j0_expansion_coeffs", [](int K, int j) {
    py::list out;
    for (auto& c : basis::j0_expansion_coeffs(K, j)) {
      py::dict d;
      d["two_nu"] = c.two_nu;
      d["two_nu_dlabel"] = c.two_nu_dlabel;
      d["coeff"] = c.coeff;
      d["cg"] = c.cg;
      out.append(d);
    }
    return out;
  });

  // ---- transform ----
  m.def("rotation_coefficient", [](int K, int J, int M, double phi) {
    auto rc = transform::rotation_coefficient(K, J, M, phi);
    std::vector<std::vector<double>> mat(size_t(rc.matrix.rows()));
    for (int r = 0; r < rc.matrix.rows(); ++r)
      for (int c = 0; c < rc.matrix.cols(); ++c) mat[size_t(r)].push_back(rc.matrix(r, c));
    return py::make_tuple(rc.labels, mat);
  });
  m.def("omega_eigenvalues", [](int K, int J, int two_nu) {
    auto blk = transform::omega_block(K, J, 0, two_nu);
    std::vector<double> evs;
    for (auto& f : transform::diagonalize_block(blk)) evs.push_back(f.omega_eigenvalue);
    return evs;
  });
  m.def("general_solution_coeffs", [](int K, int j1, int j2, int J, int M, int two_nu) {
    py::list out;
    for (auto& g : transform::general_solution_coeffs({K, j1, j2, J, M}, two_nu)) {
      py::dict d;
      d["two_lambda"] = g.two_lambda;
      d["two_mu"] = g.two_mu;
      d["a"] = g.a;
      out.append(d);
    }
    return out;
  });
  m.def("j0_harmonic", [](int K, int two_nu) {
    auto h = basis::j0_harmonic(K, two_nu);
    py::dict d;
    d["poly"] = h.poly;
    d["gamma"] = h.gamma;
    d["two_nu"] = h.two_nu;
    d["measured_nu"] = h.measured_nu;
    return d;
  });
  m.def("nu_split", [](int K, int j1, int j2, int J, int M) {
    auto w = transform::weyl_turn({K, j1, j2, J, M});
    py::list out;
    for (auto& p : transform::nu_split(w)) {
      py::dict d;
      d["two_nu"] = p.two_nu;
      d["piece"] = p.piece;
      out.append(d);
    }
    return out;
  });

  // ---- kinematics ----
  m.def("parametrize", [](std::complex<double> z1, std::complex<double> z2,
                          std::complex<double> z3) {
    kin::ComplexVec v;
    v.z << z1, z2, z3;
    kin::ShapeState s;
    kin::FrameOrientation f;
    kin::parametrize(v, s, f);
    py::dict d;
    d["rho"] = s.rho;
    d["lambda"] = s.lambda;
    d["a"] = s.a;
    d["phi1"] = f.phi1;
    d["theta"] = f.theta;
    d["phi2"] = f.phi2;
    return d;
  });
  m.def("reconstruct", [](double rho, double lambda, double a, double phi1, double theta,
                          double phi2) {
    auto v = kin::reconstruct({rho, lambda, a}, {phi1, theta, phi2});
    return std::vector<std::complex<double>>{v.z(0), v.z(1), v.z(2)};
  });
  m.def("inertia_components", [](double rho, double lambda, double a) {
    auto v = kin::inertia_components({rho, lambda, a});
    return std::vector<double>{v(0), v(1), v(2)};
  });

  // ---- dynamics ----
  m.def("simulate",
        [](const std::string& kind, const py::dict& init, double t_end, double tol,
           double sample_dt, double rho0) {
          dyn::DynState s;
          auto get = [&](const char* k, double dflt) {
            return init.contains(k) ? init[k].cast<double>() : dflt;
          };
          s.a = get("a", 0.0);
          s.lambda = get("lambda", 0.0);
          s.phi1 = get("phi1", 0.0);
          s.theta = get("theta", M_PI / 2);
          s.phi2 = get("phi2", 0.0);
          s.rho = get("rho", 1.0);
          s.da = get("da", 0.0);
          s.dlambda = get("dlambda", 0.0);
          s.dphi1 = get("dphi1", 0.0);
          s.dtheta = get("dtheta", 0.0);
          s.dphi2 = get("dphi2", 0.0);
          s.drho = get("drho", 0.0);
          dyn::PotentialSpec pot{};
          if (kind == "harmonic") pot = {dyn::PotentialSpec::Harmonic, rho0};
          if (kind == "kepler") pot = {dyn::PotentialSpec::Newton, 0.0};
          auto res = dyn::simulate(scenario_by_name(kind), s, pot, t_end, tol, sample_dt);
          py::list rows;
          for (auto& r : res.rows) {
            py::dict d;
            d["t"] = r.t;
            d["a"] = r.s.a;
            d["lambda"] = r.s.lambda;
            d["phi1"] = r.s.phi1;
            d["theta"] = r.s.theta;
            d["phi2"] = r.s.phi2;
            d["rho"] = r.s.rho;
            d["energy"] = r.energy;
            d["Lnorm"] = r.Lnorm;
            d["omega_classical"] = r.omega_cl;
            rows.append(d);
          }
          py::dict out;
          out["rows"] = rows;
          out["singular_event"] = res.singular_event;
          return out;
        },
        py::arg("kind"), py::arg("init"), py::arg("t_end"), py::arg("tol") = 1e-10,
        py::arg("sample_dt") = 0.1, py::arg("rho0") = 1.0);
}
