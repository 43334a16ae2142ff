#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hyper3b::kin {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Complex = std::complex<double>;

struct ParticleConfig {
  Vec3 x1, x2, x3;  // center-of-mass frame: x1+x2+x3 = 0
};

struct JacobiPair {
  Vec3 xi, eta;
};

struct ComplexVec {
  CVec3 z;  // z = xi + i eta
  CVec3 zbar() const { return z.conjugate(); }
  double rho2() const { return z.squaredNorm(); }
};

struct ShapeState {
  double rho = 1.0;     // >= 0
  double lambda = 0.0;  // deformation phase
  double a = 0.0;       // in [0, pi]
};

struct FrameOrientation {
  double phi1 = 0.0;
  double theta = 0.0;  // in [0, pi]
  double phi2 = 0.0;
};

// Moving frame: rows of Rz(phi1) Ry(theta) Rz(phi2).
struct Frame {
  Vec3 l1, l2, l;  // right-handed orthonormal triple, l = l1 x l2
  CVec3 lplus() const { return (l1.cast<Complex>() + Complex(0, 1) * l2.cast<Complex>()) / std::sqrt(2.0); }
  CVec3 lminus() const { return (l1.cast<Complex>() - Complex(0, 1) * l2.cast<Complex>()) / std::sqrt(2.0); }
  CVec3 lzero() const;  // l+ x l- = -i l
};

Frame frame_vectors(const FrameOrientation& f);
FrameOrientation euler_from_frame(const Frame& fr);

// Spherical components in the conventions used throughout:
//   s_{+1}(A) = -i(Ax + iAy)/sqrt2, s_0(A) = i Az, s_{-1}(A) = i(Ax - iAy)/sqrt2
Complex spherical_component(const CVec3& v, int M);

JacobiPair to_jacobi(const ParticleConfig& cfg, double tol = 1e-12);
ParticleConfig particle_positions(const JacobiPair& jp);
ComplexVec complex_vec(const JacobiPair& jp);
JacobiPair jacobi_from_complex(const ComplexVec& v);

// z = rho e^{-i lambda/2} (cos(a/2) l+ + i sin(a/2) l-)
ComplexVec reconstruct(const ShapeState& s, const FrameOrientation& f);

// Inverse of reconstruct up to frame gauge at degenerate shapes.  Always
// returns the canonical branch a in [0, pi/2].
void parametrize(const ComplexVec& v, ShapeState& s, FrameOrientation& f);

enum class Permutation { P12, P13, P23 };

// P12: z -> z*; P13: z -> e^{2 i pi/3} z*; P23: z -> e^{-2 i pi/3} z*.
ComplexVec permute(Permutation p, const ComplexVec& v);

// cos(Theta) between the Jacobi vectors from shape angles
double inter_vector_angle_cos(const ShapeState& s);

// principal moments (rho^2 sin^2(a/2 - pi/4), rho^2 cos^2(a/2 - pi/4), rho^2)
Eigen::Vector3d inertia_components(const ShapeState& s);

}  // namespace hyper3b::kin
