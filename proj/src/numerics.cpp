#include "wb/numerics.hpp"

#include <Eigen/Eigenvalues>

namespace wb {

bool is_hermitian(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_unitary(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const CMat id = CMat::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).norm() <= tol * std::max(1.0, id.norm());
}

SpectralDecomposition spectral_decompose(const CMat& m, double tol) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, "matrix not square");
  require(is_hermitian(m, tol), ErrorCode::NonHermitianInput,
          "spectral_decompose requires a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
  require(es.info() == Eigen::Success, ErrorCode::SingularOperator,
          "eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMat apply_spectral(const CMat& m, const std::function<cxd(double)>& f, double tol) {
  const SpectralDecomposition sd = spectral_decompose(m, tol);
  const int n = static_cast<int>(sd.eigenvalues.size());
  CVec fe(n);
  for (int i = 0; i < n; ++i) fe(i) = f(sd.eigenvalues(i));
  return sd.eigenvectors * fe.asDiagonal() * sd.eigenvectors.adjoint();
}

CMat spectral_function(const CMat& m, const SpectralFunction& f, double tol) {
  using Kind = SpectralFunction::Kind;
  const SpectralDecomposition sd = spectral_decompose(m, tol);
  const int n = static_cast<int>(sd.eigenvalues.size());
  const double scale = std::max(std::abs(sd.eigenvalues(0)), std::abs(sd.eigenvalues(n - 1)));

  const bool needs_positive = f.kind == Kind::Log || f.kind == Kind::PowerIt ||
                              f.kind == Kind::PowerNegHalf;
  if (needs_positive) {
    require(sd.eigenvalues(0) > tol * std::max(1.0, scale), ErrorCode::SingularForLog,
            "spectrum not strictly positive within tolerance");
  } else if (f.kind == Kind::PowerHalf) {
    require(sd.eigenvalues(0) >= -tol * std::max(1.0, scale), ErrorCode::SingularForLog,
            "spectrum has a negative eigenvalue; square root undefined");
  }

  CVec fe(n);
  for (int i = 0; i < n; ++i) {
    const double x = sd.eigenvalues(i);
    switch (f.kind) {
      case Kind::Exp:          fe(i) = std::exp(x); break;
      case Kind::Log:          fe(i) = std::log(x); break;
      case Kind::PowerIt:      fe(i) = std::exp(cxd(0.0, f.t) * std::log(x)); break;
      case Kind::PowerHalf:    fe(i) = std::sqrt(std::max(0.0, x)); break;
      case Kind::PowerNegHalf: fe(i) = 1.0 / std::sqrt(x); break;
    }
  }
  return sd.eigenvectors * fe.asDiagonal() * sd.eigenvectors.adjoint();
}

CMat mat_exp(const CMat& m, double tol) { return spectral_function(m, SpectralFunction::exp(), tol); }
CMat mat_log(const CMat& m, double tol) { return spectral_function(m, SpectralFunction::log(), tol); }
CMat mat_power_it(const CMat& m, double t, double tol) {
  return spectral_function(m, SpectralFunction::power_it(t), tol);
}
CMat mat_sqrt(const CMat& m, double tol) {
  return spectral_function(m, SpectralFunction::power_half(), tol);
}
CMat mat_inv_sqrt(const CMat& m, double tol) {
  return spectral_function(m, SpectralFunction::power_neg_half(), tol);
}

CMat herm_exp_scaled(const CMat& a, cxd alpha, double tol) {
  const SpectralDecomposition sd = spectral_decompose(a, tol);
  const int n = static_cast<int>(sd.eigenvalues.size());
  CVec fe(n);
  for (int i = 0; i < n; ++i) fe(i) = std::exp(alpha * sd.eigenvalues(i));
  return sd.eigenvectors * fe.asDiagonal() * sd.eigenvectors.adjoint();
}

CVec AntilinearMap::apply(const CVec& v) const {
  require(v.size() == linear.cols(), ErrorCode::DimensionMismatch,
          "antilinear map applied to vector of wrong size");
  return linear * v.conjugate();
}

AntilinearMap AntilinearMap::inverse() const {
  Eigen::FullPivLU<CMat> lu(linear);
  require(lu.isInvertible(), ErrorCode::SingularOperator,
          "antilinear map is singular");
  // (A^{-1}) u = conj(L^{-1} u), i.e. matrix conj(L^{-1}).
  return {lu.inverse().conjugate()};
}

bool AntilinearMap::is_antiunitary(double tol) const {
  return is_unitary(linear, tol);
}

CMat compose(const AntilinearMap& a, const AntilinearMap& b) {
  require(a.linear.cols() == b.linear.rows(), ErrorCode::DimensionMismatch,
          "compose: inner dimensions differ");
  return a.linear * b.linear.conjugate();
}

AntilinearMap compose(const AntilinearMap& a, const CMat& m) {
  require(a.linear.cols() == m.rows(), ErrorCode::DimensionMismatch,
          "compose: inner dimensions differ");
  return {a.linear * m.conjugate()};
}

AntilinearMap compose(const CMat& m, const AntilinearMap& a) {
  require(m.cols() == a.linear.rows(), ErrorCode::DimensionMismatch,
          "compose: inner dimensions differ");
  return {m * a.linear};
}

AntilinearPolar polar_antilinear(const AntilinearMap& s, double tol) {
  // Delta = S^dag S = L^T conj(L); Hermitian and PSD by construction.
  const CMat delta = s.linear.transpose() * s.linear.conjugate();
  const SpectralDecomposition sd = spectral_decompose(delta, tol);
  const int n = static_cast<int>(sd.eigenvalues.size());
  const double top = std::abs(sd.eigenvalues(n - 1));
  require(sd.eigenvalues(0) > tol * std::max(1.0, top), ErrorCode::SingularOperator,
          "polar_antilinear: map is singular within tolerance");
  const CMat inv_sqrt = spectral_function(delta, SpectralFunction::power_neg_half(), tol);
  AntilinearMap j = compose(s, inv_sqrt);
  return {j, delta};
}

cxd hs_inner(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch,
          "hs_inner shapes differ");
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hs_orthonormal_append(std::vector<CMat>& family, const CMat& candidate,
                             double tol) {
  const double input_norm = candidate.norm();
  if (input_norm == 0.0) return 0.0;
  CMat r = candidate;
  // Two passes of modified Gram-Schmidt for numerical stability.
  for (int pass = 0; pass < 2; ++pass)
    for (const CMat& b : family) r -= hs_inner(b, r) * b;
  const double rel = r.norm() / input_norm;
  if (rel > tol) family.push_back(r / r.norm());
  return rel;
}

}  // namespace wb
