#include "wb/standard_subspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace wb {

RMat real_form(const CMat& basis) {
  const int n = static_cast<int>(basis.rows());
  const int k = static_cast<int>(basis.cols());
  RMat rf(2 * n, k);
  rf.topRows(n) = basis.real();
  rf.bottomRows(n) = basis.imag();
  return rf;
}

namespace {

CVec complexify(const RVec& xy) {
  const int n = static_cast<int>(xy.size()) / 2;
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = cxd(xy(i), xy(n + i));
  return v;
}

int rank_of(const RMat& m, double tol) {
  Eigen::JacobiSVD<RMat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thresh = tol * std::max(1.0, sv(0));
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return r;
}

}  // namespace

int real_rank(const CMat& basis, double tol) {
  const int r = rank_of(real_form(basis), tol);
  require(r == basis.cols(), ErrorCode::DegenerateBasis,
          "basis columns are dependent over R");
  return r;
}

bool is_standard(const StandardSubspace& k, double tol) {
  const int n = k.space_dim();
  if (k.subspace_dim() != n) return false;
  // [K | iK] must span R^{2n}.
  RMat both(2 * n, 2 * n);
  both.leftCols(n) = real_form(k.basis);
  both.rightCols(n) = real_form(cxd(0.0, 1.0) * k.basis);
  return rank_of(both, tol) == 2 * n;
}

StandardSubspace random_standard_subspace(int n, Rng& rng) {
  CMat a = rng.complex_matrix(n, n);
  const double op = a.jacobiSvd().singularValues()(0);
  a *= 0.8 / op;
  return {a + CMat::Identity(n, n)};
}

TomitaData tomita_data(const StandardSubspace& k, double tol) {
  real_rank(k.basis, tol);
  require(is_standard(k, tol), ErrorCode::NotStandard,
          "subspace is not standard");
  const int n = k.space_dim();

  // S is determined by S b = b, S (i b) = -i b over the real basis [K | iK].
  RMat b(2 * n, 2 * n);
  b.leftCols(n) = real_form(k.basis);
  b.rightCols(n) = real_form(cxd(0.0, 1.0) * k.basis);
  RMat sign = RMat::Identity(2 * n, 2 * n);
  sign.bottomRightCorner(n, n) *= -1.0;
  const RMat s_real = b * sign * b.inverse();

  // Antilinear matrix from images of the real standard basis vectors.
  CMat l(n, n);
  for (int j = 0; j < n; ++j) {
    RVec e = RVec::Zero(2 * n);
    e(j) = 1.0;
    l.col(j) = complexify(s_real * e);
  }
  AntilinearMap s{l};
  AntilinearPolar pol = polar_antilinear(s, tol);
  return {s, pol.j, pol.delta};
}

StandardSubspace symplectic_complement(const StandardSubspace& k, double tol) {
  const int n = k.space_dim();
  const int kk = k.subspace_dim();
  // Im<v, b> = x . Im(b) - y . Re(b) for v = x + i y.
  RMat constraints(kk, 2 * n);
  for (int j = 0; j < kk; ++j) {
    constraints.row(j).head(n) = k.basis.col(j).imag().transpose();
    constraints.row(j).tail(n) = -k.basis.col(j).real().transpose();
  }
  Eigen::JacobiSVD<RMat> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  const int null_dim = 2 * n - rank;
  CMat basis(n, null_dim);
  for (int j = 0; j < null_dim; ++j)
    basis.col(j) = complexify(svd.matrixV().col(rank + j));
  return {basis};
}

StandardSubspace map_subspace(const CMat& m, const StandardSubspace& k) {
  return {m * k.basis};
}

StandardSubspace map_subspace(const AntilinearMap& a, const StandardSubspace& k) {
  return {a.linear * k.basis.conjugate()};
}

double subspace_distance(const StandardSubspace& a, const StandardSubspace& b,
                         double tol) {
  require(a.space_dim() == b.space_dim(), ErrorCode::DimensionMismatch,
          "subspaces live in different spaces");
  require(a.subspace_dim() == b.subspace_dim(), ErrorCode::DimensionMismatch,
          "subspaces have different dimensions");
  real_rank(a.basis, tol);
  real_rank(b.basis, tol);
  const RMat qa = Eigen::HouseholderQR<RMat>(real_form(a.basis))
                      .householderQ() * RMat::Identity(2 * a.space_dim(), a.subspace_dim());
  const RMat qb = Eigen::HouseholderQR<RMat>(real_form(b.basis))
                      .householderQ() * RMat::Identity(2 * b.space_dim(), b.subspace_dim());
  // Sine formulation (Bjorck-Golub): singular values of (1 - Qa Qa^T) Qb are
  // the sines of the principal angles; accurate for small angles where
  // acos(sigma_min) loses half the digits.
  Eigen::JacobiSVD<RMat> sine_svd(qb - qa * (qa.transpose() * qb));
  const double s = std::clamp(sine_svd.singularValues().maxCoeff(), 0.0, 1.0);
  if (s < 0.7) return std::asin(s);
  Eigen::JacobiSVD<RMat> cos_svd(qa.transpose() * qb);
  const double c = std::clamp(cos_svd.singularValues().minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace wb
