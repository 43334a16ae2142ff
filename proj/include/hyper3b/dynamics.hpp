#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hyper3b/kinematics.hpp"

namespace hyper3b::dyn {

using Vec6 = Eigen::Matrix<double, 6, 1>;

// Generalized coordinates in the order (a, lambda, phi1, theta, phi2, rho)
// and their time derivatives.
struct DynState {
  double a = 0, lambda = 0, phi1 = 0, theta = 0, phi2 = 0, rho = 1;
  double da = 0, dlambda = 0, dphi1 = 0, dtheta = 0, dphi2 = 0, drho = 0;

  Vec6 q() const { return (Vec6() << a, lambda, phi1, theta, phi2, rho).finished(); }
  Vec6 qd() const { return (Vec6() << da, dlambda, dphi1, dtheta, dphi2, drho).finished(); }
  static DynState from(const Vec6& q, const Vec6& qd);
};

struct PotentialSpec {
  enum Kind { Free, Harmonic, Newton } kind = Free;
  double rho0 = 0.0;  // harmonic equilibrium size
};

struct SingularConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// kinetic metric M(q) with T = qd^T M qd / 2, and its nonzero partials
Eigen::Matrix<double, 6, 6> mass_matrix(const Vec6& q);
double kinetic_energy(const DynState& s);        // quadratic-form route
double kinetic_energy_quasi(const DynState& s);  // quasi-velocity (body-rate) route
double potential_energy(const DynState& s, const PotentialSpec& p);

// body-frame angular rates (Omega1, Omega2, Omega3)
Eigen::Vector3d body_rates(const DynState& s);

// Cartesian view of the state: Jacobi vectors and their velocities
void jacobi_view(const DynState& s, kin::Vec3& xi, kin::Vec3& eta, kin::Vec3& dxi,
                 kin::Vec3& deta);

// DynState from a Cartesian phase-space point (chart pullback); the canonical
// parametrize branch fixes the gauge.
DynState state_from_cartesian(const kin::Vec3& xi, const kin::Vec3& eta, const kin::Vec3& dxi,
                              const kin::Vec3& deta);

Vec6 eom_free(const DynState& s);
Vec6 eom_potential(const DynState& s, const PotentialSpec& p);

// planar case (theta, phi2 frozen): variables (a, lambda, phi1, rho)
Eigen::Vector4d eom_planar(const DynState& s);
// deforming case (additionally p_phi1 = 0): variables (a, lambda, rho)
Eigen::Vector3d eom_deforming(const DynState& s, const PotentialSpec& p = {});
// equilateral Newtonian reduction, variables (rho, psi), psi' = lambda'/2 + phi1'
Eigen::Vector2d eom_kepler(double rho, double drho, double dpsi);

// conserved quantities
double total_energy(const DynState& s, const PotentialSpec& p);
Eigen::Vector3d angular_momentum(const DynState& s);
// classical Omega observable: 2[(xi.L)(eta_dot.L) - (eta.L)(xi_dot.L)]
double omega_classical(const DynState& s);

// ---- adaptive integrator ----------------------------------------------------

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> y;
  bool singular_event = false;
  double event_time = 0.0;
};

using Deriv = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

// Dormand-Prince 5(4) with PI step control; samples at fixed dt (plus t_end).
Trajectory integrate_ode(const Deriv& f, const Eigen::VectorXd& y0, double t_end, double tol,
                         double sample_dt);

enum class Scenario { Free, Planar, Deforming, HarmonicPot, Kepler };

struct SimRow {
  double t;
  DynState s;
  double energy;
  double Lnorm;
  double omega_cl;
};

struct SimResult {
  std::vector<SimRow> rows;
  bool singular_event = false;
  double event_time = 0.0;
  std::string chart;  // which coordinate chart the scenario integrates in
};

SimResult simulate(Scenario sc, const DynState& s0, const PotentialSpec& p, double t_end,
                   double tol, double sample_dt);

}  // namespace hyper3b::dyn
