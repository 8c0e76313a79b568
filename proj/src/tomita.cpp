#include "wb/tomita.hpp"

#include <algorithm>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace wb {

namespace {

CVec vec_of(const CMat& x) {
  return CVec(Eigen::Map<const CVec>(x.data(), x.size()));
}

CMat mat_of(const CVec& v, int n) {
  return CMat(Eigen::Map<const CMat>(v.data(), n, n));
}

}  // namespace

double FiniteVNAlgebra::membership_residual(const CMat& x) const {
  const double nx = x.norm();
  if (nx == 0.0) return 0.0;
  CMat r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const CMat& b : basis) r -= hs_inner(b, r) * b;
  return r.norm() / nx;
}

FiniteVNAlgebra generate_vn_algebra(const std::vector<CMat>& generators,
                                    int dim_cap, double tol) {
  require(!generators.empty(), ErrorCode::DegenerateBasis, "no generators");
  const int n = static_cast<int>(generators.front().rows());
  require(n <= kHardAlgebraCap, ErrorCode::DimensionCapExceeded,
          "matrix dimension exceeds hard cap");
  for (const CMat& g : generators)
    require(g.rows() == n && g.cols() == n, ErrorCode::DimensionMismatch,
            "generators must be square and of equal size");

  FiniteVNAlgebra alg;
  alg.space_dim = n;
  alg.generators = generators;

  auto try_add = [&](const CMat& x) {
    hs_orthonormal_append(alg.basis, x, tol);
    require(static_cast<int>(alg.basis.size()) <= dim_cap,
            ErrorCode::DimensionCapExceeded, "algebra dimension exceeds cap");
  };

  try_add(CMat::Identity(n, n));
  for (const CMat& g : generators) {
    try_add(g);
    try_add(g.adjoint());
  }

  // Close under adjoints and products until the span stabilizes.
  for (bool grew = true; grew;) {
    const std::size_t before = alg.basis.size();
    const std::vector<CMat> snapshot = alg.basis;
    for (const CMat& b : snapshot) try_add(b.adjoint());
    for (const CMat& a : snapshot)
      for (const CMat& b : snapshot) try_add(a * b);
    grew = alg.basis.size() > before;
  }
  return alg;
}

FiniteVNAlgebra commutant(const FiniteVNAlgebra& m, double tol) {
  const int n = m.space_dim;
  std::vector<CMat> gens = m.generators;
  for (const CMat& g : m.generators) gens.push_back(g.adjoint());

  // vec(gX - Xg) = (1 (x) g - g^T (x) 1) vec(X) with column-major vec.
  const int n2 = n * n;
  CMat constraints(static_cast<int>(gens.size()) * n2, n2);
  const CMat id = CMat::Identity(n, n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    CMat block(n2, n2);
    block.setZero();
    // 1 (x) g : block diagonal copies of g.
    for (int j = 0; j < n; ++j) block.block(j * n, j * n, n, n) = gens[k];
    // g^T (x) 1 : entry (i,j) of g^T scales an identity block.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        block.block(i * n, j * n, n, n) -= gens[k](j, i) * id;
    constraints.middleRows(static_cast<int>(k) * n2, n2) = block;
  }

  Eigen::BDCSVD<CMat> svd(constraints, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thresh = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;

  FiniteVNAlgebra comm;
  comm.space_dim = n;
  for (int j = rank; j < svd.matrixV().cols(); ++j) {
    const CMat x = mat_of(svd.matrixV().col(j), n);
    comm.basis.push_back(x / x.norm());
    comm.generators.push_back(x);
  }
  return comm;
}

CenterData center_data(const FiniteVNAlgebra& m, const FiniteVNAlgebra& mprime,
                       Rng& rng, double tol) {
  const int n = m.space_dim;
  const int d1 = m.dim(), d2 = mprime.dim();
  CMat u1(n * n, d1), u2(n * n, d2);
  for (int j = 0; j < d1; ++j) u1.col(j) = vec_of(m.basis[j]);
  for (int j = 0; j < d2; ++j) u2.col(j) = vec_of(mprime.basis[j]);

  // Principal vectors of the two spans; cosines ~ 1 flag the intersection.
  Eigen::BDCSVD<CMat> svd(u1.adjoint() * u2, Eigen::ComputeThinU);
  CenterData cd;
  for (int j = 0; j < svd.singularValues().size(); ++j) {
    if (svd.singularValues()(j) >= 1.0 - 1e-8) {
      const CMat z = mat_of(CVec(u1 * svd.matrixU().col(j)), n);
      hs_orthonormal_append(cd.basis, z, tol);
    }
  }
  const int dz = static_cast<int>(cd.basis.size());
  cd.is_factor = dz == 1;

  // Minimal projections from the eigenclusters of a random Hermitian center
  // element; retry in the (measure-zero) event of an accidental collision.
  for (int attempt = 0; attempt < 32; ++attempt) {
    CMat h = CMat::Zero(n, n);
    for (const CMat& z : cd.basis) {
      const cxd w = rng.cnormal();
      h += w * z + std::conj(w) * z.adjoint();
    }
    const SpectralDecomposition sd = spectral_decompose(h, 1e-8);
    // Cluster eigenvalues by gaps.
    const double span = std::max(1.0, sd.eigenvalues(n - 1) - sd.eigenvalues(0));
    std::vector<std::pair<int, int>> clusters;  // [start, end)
    int start = 0;
    for (int i = 1; i <= n; ++i) {
      if (i == n || sd.eigenvalues(i) - sd.eigenvalues(i - 1) > 1e-6 * span) {
        clusters.emplace_back(start, i);
        start = i;
      }
    }
    if (static_cast<int>(clusters.size()) != dz) continue;
    cd.minimal_projections.clear();
    cd.block_dims.clear();
    for (const auto& [lo, hi] : clusters) {
      CMat p = CMat::Zero(n, n);
      for (int i = lo; i < hi; ++i)
        p += sd.eigenvectors.col(i) * sd.eigenvectors.col(i).adjoint();
      cd.minimal_projections.push_back(p);
      cd.block_dims.push_back(hi - lo);
    }
    return cd;
  }
  raise(ErrorCode::DegenerateBasis,
        "center eigenclusters never separated cleanly");
}

ModularData modular_from_evaluations(const CMat& eval, const CMat& eval_star,
                                     const CVec& omega, double tol) {
  const int n = static_cast<int>(eval.rows());
  const int d = static_cast<int>(eval.cols());
  Eigen::BDCSVD<CMat> svd(eval);
  const auto& sv = svd.singularValues();
  const double thresh = std::max(tol, 1e-10) * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++rank;
  require(rank == n, ErrorCode::NotCyclic,
          "vector is not cyclic: algebra orbit does not span");
  require(rank == d, ErrorCode::NotSeparating,
          "vector is not separating: evaluation map has a kernel");

  // S (E c) = E* conj(c), so the antilinear matrix is L = E* conj(E)^{-1}.
  const CMat l = eval_star * eval.conjugate().inverse();
  AntilinearMap s{l};
  AntilinearPolar pol = polar_antilinear(s, tol);
  return {s, pol.j, pol.delta, omega};
}

ModularData modular_data(const FiniteVNAlgebra& m, const CVec& omega, double tol) {
  const int n = m.space_dim;
  require(omega.size() == n, ErrorCode::DimensionMismatch,
          "state vector has wrong dimension");
  const int d = m.dim();
  CMat eval(n, d), eval_star(n, d);
  for (int j = 0; j < d; ++j) {
    eval.col(j) = m.basis[j] * omega;
    eval_star.col(j) = m.basis[j].adjoint() * omega;
  }
  return modular_from_evaluations(eval, eval_star, omega, tol);
}

ModularCheckReport verify_modular_theorem(const FiniteVNAlgebra& m,
                                          const FiniteVNAlgebra& mprime,
                                          const ModularData& md,
                                          const std::vector<double>& t_samples,
                                          double tol) {
  ModularCheckReport rep;
  const int d = m.dim();
  const int n = m.space_dim;

  for (double t : t_samples) {
    const CMat u = mat_power_it(md.delta, t, tol);
    const CMat uinv = u.adjoint();
    for (const CMat& b : m.basis)
      rep.max_flow_residual =
          std::max(rep.max_flow_residual, m.membership_residual(u * b * uinv));
  }

  for (const CMat& b : m.basis) {
    const CMat jbj = compose(md.j, compose(b, md.j));
    rep.max_commutant_residual =
        std::max(rep.max_commutant_residual, mprime.membership_residual(jbj));
  }

  // KMS boundary identity over all basis pairs:
  //   <O, b_i Delta b_j O> = <O, b_j b_i O>,
  // assembled as E*^dag (Delta E) against transpose(E*^dag E).
  CMat eval(n, d), eval_star(n, d);
  for (int j = 0; j < d; ++j) {
    eval.col(j) = m.basis[j] * md.omega;
    eval_star.col(j) = m.basis[j].adjoint() * md.omega;
  }
  const CMat lhs = eval_star.adjoint() * (md.delta * eval);
  const CMat rhs = (eval_star.adjoint() * eval).transpose();
  rep.max_kms_residual =
      (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());

  for (int j = 0; j < d; ++j)
    rep.s_action_residual = std::max(
        rep.s_action_residual, rel_diff(md.s.apply(eval.col(j)), CVec(eval_star.col(j))));
  return rep;
}

}  // namespace wb
