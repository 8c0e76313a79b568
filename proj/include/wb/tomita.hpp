// Finite-dimensional von Neumann algebras on C^N: generated *-algebras,
// commutants, centers with their minimal projections, and modular data
// (S, J, Delta) for a cyclic separating vector, with the KMS boundary
// identity as the cross-check.
#pragma once

#include <optional>
#include <vector>

#include "wb/numerics.hpp"
#include "wb/rng.hpp"

namespace wb {

inline constexpr int kDefaultAlgebraCap = 64;
inline constexpr int kHardAlgebraCap = 256;

struct FiniteVNAlgebra {
  int space_dim = 0;             // N
  std::vector<CMat> generators;  // as supplied
  std::vector<CMat> basis;       // HS-orthonormal linear basis, basis[0] ~ 1/sqrt(N)

  int dim() const { return static_cast<int>(basis.size()); }
  // Relative distance of x from the span of the basis.
  double membership_residual(const CMat& x) const;
};

// *-closure of the generators together with the identity.  Throws
// DimensionCapExceeded when the linear dimension would exceed the cap or when
// N exceeds the hard matrix-dimension cap.
FiniteVNAlgebra generate_vn_algebra(const std::vector<CMat>& generators,
                                    int dim_cap = kDefaultAlgebraCap,
                                    double tol = kDefaultTol);

// Commutant via the kronecker null-space construction: vec(gX - Xg) = 0
// stacked over generators and their adjoints.
FiniteVNAlgebra commutant(const FiniteVNAlgebra& m, double tol = kDefaultTol);

struct CenterData {
  std::vector<CMat> basis;              // HS-orthonormal basis of M & M'
  bool is_factor = false;               // dim == 1
  std::vector<CMat> minimal_projections;
  std::vector<int> block_dims;          // rank of each minimal projection
};

// Center = M & M' by principal-vector intersection of the two HS spans;
// minimal projections from the eigenclusters of a random Hermitian center
// element (seeded, retried on accidental eigenvalue collision).
CenterData center_data(const FiniteVNAlgebra& m, const FiniteVNAlgebra& mprime,
                       Rng& rng, double tol = kDefaultTol);

struct ModularData {
  AntilinearMap s;
  AntilinearMap j;
  CMat delta;
  CVec omega;
};

// Modular data from the closable map a Omega -> a^dag Omega, assembled from
// the evaluation matrices E = [b_i Omega], E* = [b_i^dag Omega].  Requires
// Omega cyclic (E has full row rank: throws NotCyclic) and separating (E has
// trivial kernel: throws NotSeparating).
ModularData modular_data(const FiniteVNAlgebra& m, const CVec& omega,
                         double tol = kDefaultTol);

// Same construction when the caller already holds the evaluation matrices
// (used by the quasi-free oracle, where the algebra matrices are never
// materialized).
ModularData modular_from_evaluations(const CMat& eval, const CMat& eval_star,
                                     const CVec& omega, double tol = kDefaultTol);

struct ModularCheckReport {
  double max_flow_residual = 0.0;        // Delta^{it} M Delta^{-it} in M
  double max_commutant_residual = 0.0;   // J M J in M'
  double max_kms_residual = 0.0;         // <O, a Delta b O> = <O, b a O>
  double s_action_residual = 0.0;        // S a O = a^dag O over the basis
};

ModularCheckReport verify_modular_theorem(const FiniteVNAlgebra& m,
                                          const FiniteVNAlgebra& mprime,
                                          const ModularData& md,
                                          const std::vector<double>& t_samples,
                                          double tol = kDefaultTol);

}  // namespace wb
