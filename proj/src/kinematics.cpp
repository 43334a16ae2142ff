#include "hyper3b/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper3b::kin {

namespace {
const Complex I(0.0, 1.0);

Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

Eigen::Matrix3d rot_y(double a) {
  Eigen::Matrix3d m;
  m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return m;
}
}  // namespace

CVec3 Frame::lzero() const {
  // plain bilinear cross product (Eigen's complex cross() conjugates)
  CVec3 a = lplus(), b = lminus();
  CVec3 r;
  r << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
  return r;
}

Frame frame_vectors(const FrameOrientation& f) {
  Eigen::Matrix3d R = rot_z(f.phi1) * rot_y(f.theta) * rot_z(f.phi2);
  Frame fr;
  fr.l1 = R.row(0);
  fr.l2 = R.row(1);
  fr.l = R.row(2);
  return fr;
}

FrameOrientation euler_from_frame(const Frame& fr) {
  FrameOrientation f;
  const Vec3& l = fr.l;
  f.theta = std::acos(std::clamp(l.z(), -1.0, 1.0));
  const double st = std::sin(f.theta);
  if (st > 1e-12) {
    f.phi2 = std::atan2(l.y(), -l.x());
    f.phi1 = std::atan2(fr.l2.z(), fr.l1.z());
  } else {
    // gimbal line: put everything into phi2
    f.phi1 = 0.0;
    // l = +-e_z; rows: l1 = (c2, -s2, 0)*sgn-ish; recover phi2 from l1
    if (l.z() > 0)
      f.phi2 = std::atan2(-fr.l1.y(), fr.l1.x());
    else
      f.phi2 = std::atan2(fr.l1.y(), -fr.l1.x());
  }
  return f;
}

Complex spherical_component(const CVec3& v, int M) {
  switch (M) {
    case +1:
      return -I * (v.x() + I * v.y()) / std::sqrt(2.0);
    case 0:
      return I * v.z();
    case -1:
      return I * (v.x() - I * v.y()) / std::sqrt(2.0);
  }
  throw std::invalid_argument("spherical_component: M must be -1,0,+1");
}

JacobiPair to_jacobi(const ParticleConfig& cfg, double tol) {
  const Vec3 sum = cfg.x1 + cfg.x2 + cfg.x3;
  const double scale = std::max(1.0, std::max({cfg.x1.norm(), cfg.x2.norm(), cfg.x3.norm()}));
  if (sum.norm() > tol * scale)
    throw std::invalid_argument("to_jacobi: configuration violates x1+x2+x3 = 0");
  JacobiPair jp;
  jp.xi = -std::sqrt(1.5) * (cfg.x1 + cfg.x2);
  jp.eta = std::sqrt(0.5) * (cfg.x1 - cfg.x2);
  return jp;
}

ParticleConfig particle_positions(const JacobiPair& jp) {
  ParticleConfig c;
  c.x1 = -jp.xi / std::sqrt(6.0) + jp.eta / std::sqrt(2.0);
  c.x2 = -jp.xi / std::sqrt(6.0) - jp.eta / std::sqrt(2.0);
  c.x3 = std::sqrt(2.0 / 3.0) * jp.xi;
  return c;
}

ComplexVec complex_vec(const JacobiPair& jp) {
  ComplexVec v;
  v.z = jp.xi.cast<Complex>() + I * jp.eta.cast<Complex>();
  return v;
}

JacobiPair jacobi_from_complex(const ComplexVec& v) {
  JacobiPair jp;
  jp.xi = v.z.real();
  jp.eta = v.z.imag();
  return jp;
}

ComplexVec reconstruct(const ShapeState& s, const FrameOrientation& f) {
  Frame fr = frame_vectors(f);
  const double c = std::cos(s.a / 2.0), sn = std::sin(s.a / 2.0);
  ComplexVec v;
  v.z = s.rho * std::exp(-I * s.lambda / 2.0) * (c * fr.lplus() + I * sn * fr.lminus());
  return v;
}

void parametrize(const ComplexVec& v, ShapeState& s, FrameOrientation& f) {
  const double rho2 = v.rho2();
  if (rho2 <= 0.0) throw std::domain_error("parametrize: rho = 0");
  const double rho = std::sqrt(rho2);
  const Complex zz = v.z(0) * v.z(0) + v.z(1) * v.z(1) + v.z(2) * v.z(2);
  const double sina = std::min(1.0, std::abs(zz) / rho2);

  const double kEps = 1e-13;
  if (sina < kEps) {
    // sin a = 0: xi and eta are orthogonal with equal length. Gauge: lambda=0,
    // a=0, l1 along xi, l2 along eta.
    JacobiPair jp = jacobi_from_complex(v);
    Frame fr;
    fr.l1 = jp.xi.normalized();
    fr.l2 = jp.eta.normalized();
    fr.l = fr.l1.cross(fr.l2);
    s = {rho, 0.0, 0.0};
    f = euler_from_frame(fr);
    return;
  }

  // lambda from z.z = i rho^2 e^{-i lambda} sin a
  const Complex phase = zz / (I * rho2 * sina);
  double lambda = -std::atan2(phase.imag(), phase.real());
  const double cosa2 = 1.0 - sina * sina;
  const double cosa = cosa2 > 0.0 ? std::sqrt(cosa2) : 0.0;  // canonical branch
  const double a = std::atan2(sina, cosa);

  Frame fr;
  if (cosa > kEps) {
    const double ch = std::cos(a / 2.0), sh = std::sin(a / 2.0);
    const Complex el = std::exp(I * lambda / 2.0);
    CVec3 lp = (ch * el * v.z / rho - I * sh * (v.z.conjugate() / el) / rho) / cosa;
    fr.l1 = lp.real() * std::sqrt(2.0);
    fr.l2 = lp.imag() * std::sqrt(2.0);
    fr.l = fr.l1.cross(fr.l2);
  } else {
    // cos a = 0: collinear configuration. z = rho e^{-i lambda/2} (1+i)(l1+l2)/2;
    // only the line direction is physical.  Gauge: split l1,l2 symmetrically
    // about the direction using a deterministic transverse axis.
    CVec3 w = std::exp(I * lambda / 2.0) * v.z / rho;  // (1+i)(l1+l2)/2
    Vec3 m = (w * Complex(1.0, -1.0)).real();  // = l1 + l2
    m.normalize();
    Vec3 t = std::abs(m.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    t = (t - t.dot(m) * m).normalized();
    fr.l1 = (m + t) / std::sqrt(2.0);
    fr.l2 = (m - t) / std::sqrt(2.0);
    fr.l = fr.l1.cross(fr.l2);
  }
  s = {rho, lambda, a};
  f = euler_from_frame(fr);
}

ComplexVec permute(Permutation p, const ComplexVec& v) {
  ComplexVec r;
  switch (p) {
    case Permutation::P12:
      r.z = v.z.conjugate();
      return r;
    case Permutation::P13:
      r.z = std::polar(1.0, 2.0 * M_PI / 3.0) * v.z.conjugate();
      return r;
    case Permutation::P23:
      r.z = std::polar(1.0, -2.0 * M_PI / 3.0) * v.z.conjugate();
      return r;
  }
  throw std::invalid_argument("permute: bad permutation");
}

double inter_vector_angle_cos(const ShapeState& s) {
  const double sa = std::sin(s.a), sl = std::sin(s.lambda);
  const double den2 = 1.0 - sl * sl * sa * sa;
  if (den2 <= 1e-24)
    throw std::domain_error("inter_vector_angle: one Jacobi vector vanishes");
  return std::cos(s.lambda) * sa / std::sqrt(den2);
}

Eigen::Vector3d inertia_components(const ShapeState& s) {
  const double x = s.a / 2.0 - M_PI / 4.0;
  const double r2 = s.rho * s.rho;
  const double sx = std::sin(x), cx = std::cos(x);
  return {r2 * sx * sx, r2 * cx * cx, r2};
}

}  // namespace hyper3b::kin
