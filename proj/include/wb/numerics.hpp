// Dense numerics kernel: Hermitian spectral calculus and an exact calculus of
// antilinear maps.
//
// An antilinear map A on C^n is stored through the single matrix L of its
// action A v = L conj(v).  With the physics inner product <u,v> = u^dag v
// (antilinear in the first slot) the calculus is:
//
//   adjoint        A^dag          has matrix  L^T          (<u,Av> = <v,A^dag u>)
//   A antilinear, B antilinear:   A.B  linear, matrix L_A conj(L_B)
//   A antilinear, M linear:       A.M  antilinear, matrix L_A conj(M)
//                                 M.A  antilinear, matrix M L_A
//
// so Delta = S^dag S has matrix L^T conj(L) (Hermitian, PSD) and the
// antiunitary polar part J = S Delta^{-1/2} has matrix L conj(Delta^{-1/2}).
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wb/errors.hpp"

namespace wb {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// Frobenius-relative deviation: ||A - B|| / max(1, ||B||).
template <typename DerivedA, typename DerivedB>
double rel_diff(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch,
          "rel_diff shapes differ");
  return (a - b).norm() / std::max(1.0, static_cast<double>(b.norm()));
}

bool is_hermitian(const CMat& m, double tol = kDefaultTol);
bool is_unitary(const CMat& m, double tol = kDefaultTol);

struct SpectralDecomposition {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // unitary, columns matching eigenvalues
};

// Throws NonHermitianInput when m deviates from m^dag by more than tol
// relative to its norm.
SpectralDecomposition spectral_decompose(const CMat& m, double tol = kDefaultTol);

// V f(lambda) V^dag for Hermitian input.
CMat apply_spectral(const CMat& m, const std::function<cxd(double)>& f,
                    double tol = kDefaultTol);

struct SpectralFunction {
  enum class Kind { Exp, Log, PowerIt, PowerHalf, PowerNegHalf };
  Kind kind;
  double t = 0.0;  // exponent parameter for PowerIt

  static SpectralFunction exp() { return {Kind::Exp, 0.0}; }
  static SpectralFunction log() { return {Kind::Log, 0.0}; }
  static SpectralFunction power_it(double t) { return {Kind::PowerIt, t}; }
  static SpectralFunction power_half() { return {Kind::PowerHalf, 0.0}; }
  static SpectralFunction power_neg_half() { return {Kind::PowerNegHalf, 0.0}; }
};

// Hermitian functional calculus with spectrum guards: Log, PowerIt and
// PowerNegHalf require the spectrum to be positive (relative to the largest
// eigenvalue), PowerHalf requires it nonnegative; violations throw
// SingularForLog.
CMat spectral_function(const CMat& m, const SpectralFunction& f,
                       double tol = kDefaultTol);

CMat mat_exp(const CMat& m, double tol = kDefaultTol);
CMat mat_log(const CMat& m, double tol = kDefaultTol);
CMat mat_power_it(const CMat& m, double t, double tol = kDefaultTol);
CMat mat_sqrt(const CMat& m, double tol = kDefaultTol);
CMat mat_inv_sqrt(const CMat& m, double tol = kDefaultTol);

// exp(alpha * A) for Hermitian A and arbitrary complex alpha, evaluated as
// V e^{alpha lambda} V^dag.  This is the one exponential primitive; unitary
// one-parameter groups and the positive operators e^{K/2} both go through it.
CMat herm_exp_scaled(const CMat& a, cxd alpha, double tol = kDefaultTol);

struct AntilinearMap {
  CMat linear;  // action v |-> linear * conj(v)

  int dim() const { return static_cast<int>(linear.rows()); }
  CVec apply(const CVec& v) const;
  AntilinearMap adjoint() const { return {linear.transpose()}; }
  AntilinearMap inverse() const;  // throws SingularOperator when not invertible
  bool is_antiunitary(double tol = kDefaultTol) const;

  static AntilinearMap conjugation(int n) {
    return {CMat::Identity(n, n)};
  }
};

// Composition calculus (see file header).  Dimension mismatches throw.
CMat compose(const AntilinearMap& a, const AntilinearMap& b);           // linear
AntilinearMap compose(const AntilinearMap& a, const CMat& m);           // antilinear
AntilinearMap compose(const CMat& m, const AntilinearMap& a);           // antilinear

struct AntilinearPolar {
  AntilinearMap j;  // antiunitary
  CMat delta;       // positive, Hermitian
};

// Polar decomposition S = J Delta^{1/2} of an injective antilinear map.
// Throws SingularOperator when S is singular within tolerance.  J is always
// antiunitary; J^2 = 1 and J Delta J = Delta^{-1} hold exactly when S is an
// involution, and are asserted by callers in that situation, not here.
AntilinearPolar polar_antilinear(const AntilinearMap& s, double tol = kDefaultTol);

// Hilbert-Schmidt inner product tr(A^dag B).
cxd hs_inner(const CMat& a, const CMat& b);

// Gram-Schmidt a matrix into an existing HS-orthonormal family; returns the
// norm of the residual relative to the input norm (0 means linearly
// dependent, 1 means orthogonal).  On acceptance the normalized residual is
// appended to the family.
double hs_orthonormal_append(std::vector<CMat>& family, const CMat& candidate,
                             double tol = kDefaultTol);

}  // namespace wb
