#include "hyper3b/dynamics.hpp"

#include <cmath>

namespace hyper3b::dyn {

namespace {
using Mat6 = Eigen::Matrix<double, 6, 6>;
using kin::Complex;
using kin::CVec3;
using kin::Vec3;

constexpr double kChartEps = 1e-8;
}  // namespace

DynState DynState::from(const Vec6& q, const Vec6& qd) {
  DynState s;
  s.a = q(0);
  s.lambda = q(1);
  s.phi1 = q(2);
  s.theta = q(3);
  s.phi2 = q(4);
  s.rho = q(5);
  s.da = qd(0);
  s.dlambda = qd(1);
  s.dphi1 = qd(2);
  s.dtheta = qd(3);
  s.dphi2 = qd(4);
  s.drho = qd(5);
  return s;
}

Mat6 mass_matrix(const Vec6& q) {
  const double a = q(0), p1 = q(2), th = q(3), rho = q(5);
  const double r2 = rho * rho;
  const double ca = std::cos(a), sa = std::sin(a);
  const double ct = std::cos(th), st = std::sin(th);
  const double s2p = std::sin(2 * p1), c2p = std::cos(2 * p1);
  Mat6 M = Mat6::Zero();
  M(0, 0) = r2 / 4;
  M(1, 1) = r2 / 4;
  M(1, 2) = M(2, 1) = -r2 * ca / 2;
  M(1, 4) = M(4, 1) = -r2 * ca * ct / 2;
  M(2, 2) = r2;
  M(2, 4) = M(4, 2) = r2 * ct;
  M(3, 3) = r2 * (1 + sa * s2p) / 2;
  M(3, 4) = M(4, 3) = -r2 * sa * st * c2p / 2;
  M(4, 4) = r2 * (2 - st * st * (1 + sa * s2p)) / 2;
  M(5, 5) = 1.0;
  return M;
}

namespace {

// nonzero partials of the mass matrix; index: 0 = d/da, 1 = d/dphi1,
// 2 = d/dtheta, 3 = d/drho
std::array<Mat6, 4> mass_matrix_partials(const Vec6& q) {
  const double a = q(0), p1 = q(2), th = q(3), rho = q(5);
  const double r2 = rho * rho;
  const double ca = std::cos(a), sa = std::sin(a);
  const double ct = std::cos(th), st = std::sin(th);
  const double s2p = std::sin(2 * p1), c2p = std::cos(2 * p1);

  std::array<Mat6, 4> d{};
  for (auto& m : d) m = Mat6::Zero();

  Mat6& da = d[0];
  da(1, 2) = da(2, 1) = r2 * sa / 2;
  da(1, 4) = da(4, 1) = r2 * sa * ct / 2;
  da(3, 3) = r2 * ca * s2p / 2;
  da(3, 4) = da(4, 3) = -r2 * ca * st * c2p / 2;
  da(4, 4) = -r2 * st * st * ca * s2p / 2;

  Mat6& dp = d[1];
  dp(3, 3) = r2 * sa * c2p;
  dp(3, 4) = dp(4, 3) = r2 * sa * st * s2p;
  dp(4, 4) = -r2 * st * st * sa * c2p;

  Mat6& dt = d[2];
  dt(1, 4) = dt(4, 1) = r2 * ca * st / 2;
  dt(2, 4) = dt(4, 2) = -r2 * st;
  dt(3, 4) = dt(4, 3) = -r2 * sa * ct * c2p / 2;
  dt(4, 4) = -r2 * st * ct * (1 + sa * s2p);

  Mat6& dr = d[3];
  dr = mass_matrix(q) * (2.0 / rho);
  dr(5, 5) = 0.0;

  return d;
}

// Christoffel force term C_i = sum_k qd_k (dM[k] qd)_i - qd^T dM[i] qd / 2
Vec6 coriolis(const Vec6& q, const Vec6& qd) {
  const auto d = mass_matrix_partials(q);
  const int qidx[4] = {0, 2, 3, 5};
  Vec6 c = Vec6::Zero();
  for (int k = 0; k < 4; ++k) c += qd(qidx[k]) * (d[size_t(k)] * qd);
  for (int k = 0; k < 4; ++k) c(qidx[k]) -= 0.5 * qd.dot(d[size_t(k)] * qd);
  return c;
}

Vec6 forces(const DynState& s, const PotentialSpec& p) {
  Vec6 f = Vec6::Zero();
  switch (p.kind) {
    case PotentialSpec::Free:
      break;
    case PotentialSpec::Harmonic:
      f(0) = 0.5 * s.rho * p.rho0 * std::cos(s.a / 2) * std::cos(s.lambda / 2);
      f(1) = -0.5 * s.rho * p.rho0 * std::sin(s.a / 2) * std::sin(s.lambda / 2);
      f(5) = -s.rho + p.rho0 * std::sin(s.a / 2) * std::cos(s.lambda / 2);
      break;
    case PotentialSpec::Newton:
      if (s.rho < 1e-12) throw SingularConfiguration("Newton potential: rho -> 0");
      f(5) = -3.0 / (s.rho * s.rho);
      break;
  }
  return f;
}

Vec6 solve_accel(const DynState& s, const PotentialSpec& p) {
  const Vec6 q = s.q(), qd = s.qd();
  const Mat6 M = mass_matrix(q);
  const Vec6 rhs = forces(s, p) - coriolis(q, qd);
  Eigen::FullPivLU<Mat6> lu(M);
  const Vec6 qdd = lu.solve(rhs);
  const double resid = (M * qdd - rhs).norm();
  if (resid > 1e-8 * (rhs.norm() + 1.0))
    throw SingularConfiguration("mass matrix degenerate at this configuration");
  return qdd;
}

}  // namespace

Eigen::Vector3d body_rates(const DynState& s) {
  const double sp = std::sin(s.phi1), cp = std::cos(s.phi1);
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  return {-s.dphi2 * st * cp + s.dtheta * sp, -s.dphi2 * sp * st - s.dtheta * cp,
          -s.dphi1 - s.dphi2 * ct};
}

double kinetic_energy(const DynState& s) {
  const Vec6 qd = s.qd();
  return 0.5 * qd.dot(mass_matrix(s.q()) * qd);
}

double kinetic_energy_quasi(const DynState& s) {
  const Eigen::Vector3d om = body_rates(s);
  const double r2 = s.rho * s.rho;
  const double sa = std::sin(s.a), ca = std::cos(s.a);
  return 0.5 * r2 *
             (0.25 * s.da * s.da + 0.25 * s.dlambda * s.dlambda + 0.5 * om(0) * om(0) +
              0.5 * om(1) * om(1) + om(2) * om(2) - sa * om(0) * om(1) +
              ca * s.dlambda * om(2)) +
         0.5 * s.drho * s.drho;
}

double potential_energy(const DynState& s, const PotentialSpec& p) {
  switch (p.kind) {
    case PotentialSpec::Free:
      return 0.0;
    case PotentialSpec::Harmonic:
      return 0.5 * (s.rho * s.rho + p.rho0 * p.rho0) -
             s.rho * p.rho0 * std::sin(s.a / 2) * std::cos(s.lambda / 2);
    case PotentialSpec::Newton:
      return -3.0 / s.rho;
  }
  return 0.0;
}

double total_energy(const DynState& s, const PotentialSpec& p) {
  return kinetic_energy(s) + potential_energy(s, p);
}

void jacobi_view(const DynState& s, Vec3& xi, Vec3& eta, Vec3& dxi, Vec3& deta) {
  const kin::FrameOrientation fo{s.phi1, s.theta, s.phi2};
  const kin::Frame fr = kin::frame_vectors(fo);
  const Complex I(0, 1);
  const Complex el = std::exp(-I * s.lambda / 2.0);
  const double ch = std::cos(s.a / 2), sh = std::sin(s.a / 2);
  const CVec3 lp = fr.lplus(), lm = fr.lminus();

  const CVec3 z = s.rho * el * (ch * lp + I * sh * lm);
  const CVec3 dz_shape = (s.drho / s.rho) * z - I * 0.5 * s.dlambda * z +
                         0.5 * s.da * s.rho * el * (-sh * lp + I * ch * lm);
  const Eigen::Vector3d om = body_rates(s);
  const Vec3 w = om(0) * fr.l1 + om(1) * fr.l2 + om(2) * fr.l;
  CVec3 wxz;  // plain bilinear cross (Eigen's complex cross() conjugates)
  wxz << w(1) * z(2) - w(2) * z(1), w(2) * z(0) - w(0) * z(2), w(0) * z(1) - w(1) * z(0);
  const CVec3 dz = dz_shape + wxz;

  xi = z.real();
  eta = z.imag();
  dxi = dz.real();
  deta = dz.imag();
}

DynState state_from_cartesian(const Vec3& xi, const Vec3& eta, const Vec3& dxi,
                              const Vec3& deta) {
  kin::ComplexVec v;
  v.z = xi.cast<Complex>() + Complex(0, 1) * eta.cast<Complex>();
  kin::ShapeState shape;
  kin::FrameOrientation fo;
  kin::parametrize(v, shape, fo);
  DynState s;
  s.a = shape.a;
  s.lambda = shape.lambda;
  s.phi1 = fo.phi1;
  s.theta = fo.theta;
  s.phi2 = fo.phi2;
  s.rho = shape.rho;

  // columns of the chart Jacobian from unit-rate velocities
  Mat6 Jm;
  for (int i = 0; i < 6; ++i) {
    DynState u = s;
    Vec6 qd = Vec6::Zero();
    qd(i) = 1.0;
    u.da = qd(0);
    u.dlambda = qd(1);
    u.dphi1 = qd(2);
    u.dtheta = qd(3);
    u.dphi2 = qd(4);
    u.drho = qd(5);
    Vec3 x_, e_, dx_, de_;
    jacobi_view(u, x_, e_, dx_, de_);
    Jm.block<3, 1>(0, i) = dx_;
    Jm.block<3, 1>(3, i) = de_;
  }
  Vec6 rhs;
  rhs << dxi, deta;
  Eigen::FullPivLU<Mat6> lu(Jm);
  const Vec6 qd = lu.solve(rhs);
  if ((Jm * qd - rhs).norm() > 1e-8 * (rhs.norm() + 1.0))
    throw SingularConfiguration("state_from_cartesian: chart Jacobian degenerate");
  s.da = qd(0);
  s.dlambda = qd(1);
  s.dphi1 = qd(2);
  s.dtheta = qd(3);
  s.dphi2 = qd(4);
  s.drho = qd(5);
  return s;
}

Vec6 eom_free(const DynState& s) {
  if (std::abs(std::sin(s.theta)) < kChartEps || std::abs(std::cos(s.a)) < kChartEps ||
      std::abs(std::sin(s.a)) < kChartEps) {
    // at exact zero velocity the chart still gives a consistent answer
    const Vec6 qd = s.qd();
    if (qd.norm() > 0.0) throw SingularConfiguration("eom_free: coordinate chart degenerate");
  }
  return solve_accel(s, {});
}

Vec6 eom_potential(const DynState& s, const PotentialSpec& p) {
  const Vec6 qd = s.qd();
  if ((std::abs(std::sin(s.theta)) < kChartEps || std::abs(std::cos(s.a)) < kChartEps ||
       std::abs(std::sin(s.a)) < kChartEps) &&
      qd.norm() > 0.0) {
    throw SingularConfiguration("eom_potential: coordinate chart degenerate");
  }
  return solve_accel(s, p);
}

Eigen::Vector4d eom_planar(const DynState& s) {
  if (std::abs(s.dtheta) > 1e-12 || std::abs(s.dphi2) > 1e-12)
    throw std::invalid_argument("eom_planar: constraints dtheta = dphi2 = 0 violated");
  if (std::abs(std::sin(s.a)) < kChartEps)
    throw SingularConfiguration("eom_planar: sin a = 0");
  const Vec6 q = s.q(), qd = s.qd();
  const Mat6 M = mass_matrix(q);
  const Vec6 rhs = -coriolis(q, qd);
  const int idx[4] = {0, 1, 2, 5};
  Eigen::Matrix4d Mr;
  Eigen::Vector4d r;
  for (int i = 0; i < 4; ++i) {
    r(i) = rhs(idx[i]);
    for (int j = 0; j < 4; ++j) Mr(i, j) = M(idx[i], idx[j]);
  }
  return Mr.fullPivLu().solve(r);
}

Eigen::Vector3d eom_deforming(const DynState& s, const PotentialSpec& p) {
  if (std::abs(s.dtheta) > 1e-12 || std::abs(s.dphi2) > 1e-12)
    throw std::invalid_argument("eom_deforming: constraints dtheta = dphi2 = 0 violated");
  const double expected_dphi1 = 0.5 * std::cos(s.a) * s.dlambda;
  if (std::abs(s.dphi1 - expected_dphi1) > 1e-9)
    throw std::invalid_argument("eom_deforming: p_phi1 = 0 constraint violated");
  const double sa = std::sin(s.a), ca = std::cos(s.a);
  if (std::abs(sa) < kChartEps) throw SingularConfiguration("eom_deforming: sin a = 0");
  const Vec6 f = forces(s, p);
  const double r2 = s.rho * s.rho;
  const double add =
      sa * ca * s.dlambda * s.dlambda - 2.0 * s.drho * s.da / s.rho + 4.0 * f(0) / r2;
  const double ldd = 4.0 * f(1) / (r2 * sa * sa) - 2.0 * s.drho * s.dlambda / s.rho -
                     2.0 * ca * s.da * s.dlambda / sa;
  const double rdd =
      s.rho * (s.da * s.da + sa * sa * s.dlambda * s.dlambda) / 4.0 + f(5);
  return {add, ldd, rdd};
}

Eigen::Vector2d eom_kepler(double rho, double drho, double dpsi) {
  if (rho < 1e-12) throw SingularConfiguration("eom_kepler: rho -> 0");
  return {rho * dpsi * dpsi - 3.0 / (rho * rho), -2.0 * drho * dpsi / rho};
}

Eigen::Vector3d angular_momentum(const DynState& s) {
  Vec3 xi, eta, dxi, deta;
  jacobi_view(s, xi, eta, dxi, deta);
  return xi.cross(dxi) + eta.cross(deta);
}

double omega_classical(const DynState& s) {
  Vec3 xi, eta, dxi, deta;
  jacobi_view(s, xi, eta, dxi, deta);
  const Vec3 L = xi.cross(dxi) + eta.cross(deta);
  return 2.0 * (xi.dot(L) * deta.dot(L) - eta.dot(L) * dxi.dot(L));
}

// ---- integrator -------------------------------------------------------------

Trajectory integrate_ode(const Deriv& f, const Eigen::VectorXd& y0, double t_end, double tol,
                         double sample_dt) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_ode: tol must be positive");
  if (!(sample_dt > 0.0))
    throw std::invalid_argument("integrate_ode: sample_dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate_ode: t_end must be positive");
  // Dormand-Prince 5(4)
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory traj;
  double t = 0.0;
  Eigen::VectorXd y = y0;
  traj.t.push_back(t);
  traj.y.push_back(y);
  long sample_idx = 1;

  const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
  double h = std::min(t_end / 100.0, 1e-2);
  double err_prev = 1.0;
  Eigen::VectorXd k1;
  bool have_k1 = false;

  try {
    while (t < t_end - tiny) {
      const double target = std::min(sample_idx * sample_dt, t_end);
      if (target - t <= tiny) {
        // landed on a sample boundary within roundoff
        traj.t.push_back(target);
        traj.y.push_back(y);
        t = target;
        ++sample_idx;
        continue;
      }
      double hstep = h;
      bool clipped = false;
      if (t + hstep >= target - tiny) {
        hstep = target - t;
        clipped = true;
      }
      if (hstep < 1e-14 * std::max(1.0, std::abs(t)))
        throw SingularConfiguration("integrate_ode: step underflow");

      if (!have_k1) {
        k1 = f(t, y);
        have_k1 = true;
      }
      Eigen::VectorXd k2 = f(t + c2 * hstep, y + hstep * (a21 * k1));
      Eigen::VectorXd k3 = f(t + c3 * hstep, y + hstep * (a31 * k1 + a32 * k2));
      Eigen::VectorXd k4 = f(t + c4 * hstep, y + hstep * (a41 * k1 + a42 * k2 + a43 * k3));
      Eigen::VectorXd k5 =
          f(t + c5 * hstep, y + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      Eigen::VectorXd k6 =
          f(t + hstep, y + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      Eigen::VectorXd ynew =
          y + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      Eigen::VectorXd k7 = f(t + hstep, ynew);
      Eigen::VectorXd err_v =
          hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err = 0.0;
      for (int i = 0; i < y.size(); ++i) {
        const double sc = tol + tol * std::max(std::abs(y(i)), std::abs(ynew(i)));
        err += std::pow(err_v(i) / sc, 2);
      }
      err = std::sqrt(err / double(y.size()));

      if (err <= 1.0) {
        t += hstep;
        y = ynew;
        k1 = k7;  // FSAL
        if (clipped) {
          traj.t.push_back(t);
          traj.y.push_back(y);
          if (std::abs(t - sample_idx * sample_dt) <= tiny) ++sample_idx;
        }
        if (!clipped) {
          const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                             std::pow(err_prev, 0.4 / 5.0);
          h = hstep * std::clamp(fac, 0.2, 5.0);
          err_prev = std::max(err, 1e-10);
        }
      } else {
        h = hstep * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
      }
    }
  } catch (const SingularConfiguration&) {
    traj.singular_event = true;
    traj.event_time = t;
  }
  return traj;
}

SimResult simulate(Scenario sc, const DynState& s0, const PotentialSpec& p, double t_end,
                   double tol, double sample_dt) {
  SimResult out;
  PotentialSpec pot = p;

  auto pack_full = [](const DynState& s) {
    Eigen::VectorXd y(12);
    y << s.q(), s.qd();
    return y;
  };
  auto unpack_full = [](const Eigen::VectorXd& y) {
    return DynState::from(y.head<6>(), y.tail<6>());
  };

  Deriv deriv;
  std::function<DynState(const Eigen::VectorXd&)> to_state;
  Eigen::VectorXd y0;

  switch (sc) {
    case Scenario::Free:
    case Scenario::HarmonicPot: {
      if (sc == Scenario::Free) pot = {};
      y0 = pack_full(s0);
      deriv = [pot, unpack_full](double, const Eigen::VectorXd& y) {
        DynState s = unpack_full(y);
        Vec6 qdd = eom_potential(s, pot);
        Eigen::VectorXd dy(12);
        dy << s.qd(), qdd;
        return dy;
      };
      to_state = unpack_full;
      break;
    }
    case Scenario::Planar: {
      pot = {};
      y0.resize(8);
      y0 << s0.a, s0.lambda, s0.phi1, s0.rho, s0.da, s0.dlambda, s0.dphi1, s0.drho;
      const double th = s0.theta, p2 = s0.phi2;
      deriv = [th, p2](double, const Eigen::VectorXd& y) {
        DynState s;
        s.a = y(0);
        s.lambda = y(1);
        s.phi1 = y(2);
        s.rho = y(3);
        s.theta = th;
        s.phi2 = p2;
        s.da = y(4);
        s.dlambda = y(5);
        s.dphi1 = y(6);
        s.drho = y(7);
        Eigen::Vector4d qdd = eom_planar(s);
        Eigen::VectorXd dy(8);
        dy << y(4), y(5), y(6), y(7), qdd(0), qdd(1), qdd(2), qdd(3);
        return dy;
      };
      to_state = [th, p2](const Eigen::VectorXd& y) {
        DynState s;
        s.a = y(0);
        s.lambda = y(1);
        s.phi1 = y(2);
        s.rho = y(3);
        s.theta = th;
        s.phi2 = p2;
        s.da = y(4);
        s.dlambda = y(5);
        s.dphi1 = y(6);
        s.drho = y(7);
        return s;
      };
      break;
    }
    case Scenario::Deforming: {
      y0.resize(7);
      y0 << s0.a, s0.lambda, s0.phi1, s0.rho, s0.da, s0.dlambda, s0.drho;
      const double th = s0.theta, p2 = s0.phi2;
      const PotentialSpec dp = p;
      deriv = [dp](double, const Eigen::VectorXd& y) {
        DynState s;
        s.a = y(0);
        s.lambda = y(1);
        s.phi1 = y(2);
        s.rho = y(3);
        s.da = y(4);
        s.dlambda = y(5);
        s.drho = y(6);
        s.dphi1 = 0.5 * std::cos(s.a) * s.dlambda;
        Eigen::Vector3d qdd = eom_deforming(s, dp);
        Eigen::VectorXd dy(7);
        dy << y(4), y(5), s.dphi1, y(6), qdd(0), qdd(1), qdd(2);
        return dy;
      };
      to_state = [th, p2](const Eigen::VectorXd& y) {
        DynState s;
        s.a = y(0);
        s.lambda = y(1);
        s.phi1 = y(2);
        s.rho = y(3);
        s.theta = th;
        s.phi2 = p2;
        s.da = y(4);
        s.dlambda = y(5);
        s.drho = y(6);
        s.dphi1 = 0.5 * std::cos(s.a) * s.dlambda;
        return s;
      };
      break;
    }
    case Scenario::Kepler: {
      pot = {PotentialSpec::Newton, 0.0};
      const double psi0 = 0.5 * s0.lambda + s0.phi1;
      const double dpsi0 = 0.5 * s0.dlambda + s0.dphi1;
      y0.resize(4);
      y0 << s0.rho, psi0, s0.drho, dpsi0;
      deriv = [](double, const Eigen::VectorXd& y) {
        Eigen::Vector2d acc = eom_kepler(y(0), y(2), y(3));
        Eigen::VectorXd dy(4);
        dy << y(2), y(3), acc(0), acc(1);
        return dy;
      };
      const double th = s0.theta, p2 = s0.phi2;
      to_state = [th, p2](const Eigen::VectorXd& y) {
        DynState s;
        s.a = 0.0;
        s.lambda = 0.0;
        s.phi1 = y(1);
        s.theta = th;
        s.phi2 = p2;
        s.rho = y(0);
        s.dphi1 = y(3);
        s.drho = y(2);
        return s;
      };
      break;
    }
  }

  switch (sc) {
    case Scenario::Kepler:
      out.chart = "equilateral chart a = 0 (psi = lambda/2 + phi1)";
      break;
    case Scenario::HarmonicPot:
      out.chart = "general chart; equilibrium at a = pi, lambda = 0";
      break;
    default:
      out.chart = "general (rho, lambda, a, Euler) chart";
      break;
  }
  Trajectory tr = integrate_ode(deriv, y0, t_end, tol, sample_dt);
  out.singular_event = tr.singular_event;
  out.event_time = tr.event_time;
  for (size_t i = 0; i < tr.t.size(); ++i) {
    SimRow row;
    row.t = tr.t[i];
    row.s = to_state(tr.y[i]);
    row.energy = total_energy(row.s, pot);
    row.Lnorm = angular_momentum(row.s).norm();
    row.omega_cl = omega_classical(row.s);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace hyper3b::dyn
