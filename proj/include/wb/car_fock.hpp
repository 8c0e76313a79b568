// CAR algebra on fermionic Fock space over C^n via the Jordan-Wigner
// construction, the Klein twist Z, graded/twisted locality, quasi-free
// states with their purification, and the (abelian) sector data of the
// even/odd grading.
//
// Conventions: basis index = occupation bitmask (bit k = mode k occupied);
// a_k^dag |b> = (-1)^{sum_{j<k} b_j} |b + e_k| with the string over the
// lower modes, so for one mode a^dag = [[0,0],[1,0]].  Gamma is
// (-1)^{popcount}; the twist Z = (1 + i Gamma)/(1 + i) acts as 1 on the
// even and -i on the odd subspace, so Z^2 = Gamma and Z^4 = 1 exactly.
#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "wb/numerics.hpp"
#include "wb/rng.hpp"

namespace wb {

inline constexpr int kMaxModes = 12;
inline constexpr int kMaxDenseModes = 10;

using SparseC = Eigen::SparseMatrix<cxd>;

struct FockModel {
  int modes = 0;
  int dim = 0;  // 2^modes
  std::vector<SparseC> create;      // a_k^dag
  std::vector<SparseC> annihilate;  // a_k

  static FockModel build(int n_modes);  // throws ModeCapExceeded outside [1,12]

  CMat dense_create(int k) const;       // throws DimensionCapExceeded above 10 modes
  CMat gamma() const;
  CMat twist_z() const;
  CMat number_op() const;
};

// A CAR monomial assigns one factor per mode; the operator is the product in
// mode-ascending order left to right.
enum class ModeFactor { One, Create, Annihilate, Number };
using Monomial = std::vector<ModeFactor>;

int monomial_parity(const Monomial& m);  // 0 even, 1 odd

// Action of the monomial (or of its adjoint) on a Fock vector.
CVec apply_monomial(const FockModel& model, const Monomial& m, const CVec& v,
                    bool dagger = false);

CMat dense_monomial(const FockModel& model, const Monomial& m);

// All monomials supported on the given modes (factor One elsewhere),
// enumerated in a fixed order: 4^{|support|} entries.
std::vector<Monomial> monomials_on(int n_modes, const std::vector<int>& support);

// Conjugation by the twist: residual of Z X Z^* = X for even X, and of
// Z X Z^* = i Gamma X for odd X.  The declared parity is validated against
// Gamma X Gamma first; mismatch throws WrongParity.
double twist_conjugation_residual(const FockModel& model, const CMat& x,
                                  int declared_parity, double tol = kDefaultTol);

// Residual of V Z V = Z^* for an antiunitary V; preconditions V^2 = 1 and
// V Gamma V = Gamma are validated (WrongParity on failure).
double twist_reality_residual(const FockModel& model, const AntilinearMap& v,
                              double tol = kDefaultTol);

struct TwistedLocalityReport {
  int pairs_checked = 0;
  // max over pairs of || [Z M1 Z^*, M2] || and of the graded commutator norm,
  // and the max deviation of [Z M1 Z^*, M2] - i Gamma {M1, M2} over odd pairs.
  double max_twisted_commutator = 0.0;
  double max_graded_commutator = 0.0;
  double max_bridge_residual = 0.0;
};

// Exhaustive graded-vs-twisted locality over monomials supported on two
// disjoint mode sets (OverlappingRegions otherwise).
TwistedLocalityReport twisted_locality_check(const FockModel& model,
                                             const std::vector<int>& modes_a,
                                             const std::vector<int>& modes_b);

// ----- quasi-free states ---------------------------------------------------

inline double quasifree_mode_log_ratio(double g) { return std::log((1.0 - g) / g); }

struct QuasifreeOracle {
  CVec omega;                 // purified vector on the doubled Fock space
  CMat delta;                 // modular operator of CAR(system) from omega
  RVec gns_log_spectrum;      // sorted log-eigenvalues of delta
  RVec formula_log_spectrum;  // sorted closed-form multiset
  double covariance_residual = 0.0;
  double spectrum_residual = 0.0;  // max abs difference of the two spectra
};

// Purifies the quasi-free state with two-point matrix G (r x r Hermitian,
// spectrum strictly inside (0,1): NotFaithful otherwise; r <= 4:
// ModeCapExceeded otherwise) on a doubled 2r-mode Fock space, assembles the
// modular operator of the system CAR algebra from the GNS evaluation maps
// without materializing algebra matrices, and compares its log-spectrum with
// the closed-form multiset { sum_k eps_k (mbar_k - m_k) },
// eps_k = log((1-g_k)/g_k).
QuasifreeOracle quasifree_modular_oracle(const CMat& g, double tol = kDefaultTol);

// ----- sectors -------------------------------------------------------------

struct SectorInfo {
  const char* name;        // "even" / "odd"
  int subspace_dim;
  int kappa;               // statistics phase, +1 or -1
  double statistics_dim;   // d(rho)
  double froehlich_index;  // d(rho)^2
};

// The two graded sectors of the CAR algebra: both have statistics dimension 1
// and index 1; the statistics phase is +1 on the even and -1 on the odd
// sector.
std::vector<SectorInfo> sector_statistics(const FockModel& model);

}  // namespace wb
