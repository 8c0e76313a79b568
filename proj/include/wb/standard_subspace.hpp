// Standard subspaces of C^n and their Tomita operators.
//
// A closed real subspace K of C^n is standard when K + iK = C^n and
// K & iK = {0}; equivalently K is the real span of the columns of an
// invertible complex n x n matrix.  The Tomita involution S(xi + i eta)
// = xi - i eta (xi, eta in K) is antilinear with polar decomposition
// S = J Delta^{1/2}; S^2 = 1 forces J^2 = 1 and J Delta J = Delta^{-1}.
// The symplectic complement K' = { v : Im<v, k> = 0 for all k in K }
// satisfies K' = JK and Delta_{K'} = Delta^{-1}.
#pragma once

#include <vector>

#include "wb/numerics.hpp"
#include "wb/rng.hpp"

namespace wb {

struct StandardSubspace {
  CMat basis;  // n x k complex columns; the subspace is their *real* span

  int space_dim() const { return static_cast<int>(basis.rows()); }
  int subspace_dim() const { return static_cast<int>(basis.cols()); }
};

// Columns of the basis as vectors in R^{2n} (Re stacked over Im).
RMat real_form(const CMat& basis);

// Real dimension of the span; throws DegenerateBasis when the columns are
// linearly dependent over R.
int real_rank(const CMat& basis, double tol = kDefaultTol);

bool is_standard(const StandardSubspace& k, double tol = kDefaultTol);

// K = (A + 1) R^n with ||A|| < 1; always standard.
StandardSubspace random_standard_subspace(int n, Rng& rng);

struct TomitaData {
  AntilinearMap s;  // involution with S k = k on K
  AntilinearMap j;  // modular conjugation (antiunitary, J^2 = 1)
  CMat delta;       // modular operator (positive)
};

// Throws NotStandard when K is not standard, DegenerateBasis when the basis
// is degenerate.
TomitaData tomita_data(const StandardSubspace& k, double tol = kDefaultTol);

StandardSubspace symplectic_complement(const StandardSubspace& k,
                                       double tol = kDefaultTol);

// Image subspaces under linear / antilinear maps (both send real spans to
// real spans).
StandardSubspace map_subspace(const CMat& m, const StandardSubspace& k);
StandardSubspace map_subspace(const AntilinearMap& a, const StandardSubspace& k);

// Largest principal angle (radians) between the real spans; requires equal
// subspace dimensions.
double subspace_distance(const StandardSubspace& a, const StandardSubspace& b,
                         double tol = kDefaultTol);

}  // namespace wb
