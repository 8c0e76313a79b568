// Minkowski geometry (signature +,-,...,-) in d = 3, 4, wedge regions with
// exact canonical forms, double cones and their wedge-dual regions, and the
// covering groups:
//
//   d = 4: SL(2, C) acting through X = x^mu sigma_mu, X -> A X A^dag, with
//          Lambda(A)_{mu nu} = Re tr(sigma_mu A sigma_nu A^dag)/2;
//   d = 3: formal reduced words over the two wedge boosts and the rotation
//          lift (the universal cover has no faithful finite-dimensional
//          matrix model; word equality after merge-reduction is a sufficient,
//          conservative identity test, and the rotation parameter never
//          wraps, so rot(2 pi) is visibly nontrivial while covering to 1).
//
// Wedge conventions: W1 = { x1 > |x0| }; the wedge boost is
// Lambda_W(t) = boost by rapidity -2 pi t in the wedge plane, lifting to
// exp(-pi t sigma_k) for the axis-k wedge in d = 4.  The causal complement
// of Lambda W1 + a is (Lambda r_12(pi)) W1 + a, and -W1 = W1'.
#pragma once

#include <array>
#include <vector>

#include "wb/numerics.hpp"
#include "wb/rng.hpp"

namespace wb {

// ---------------------------------------------------------------- basics --

RMat minkowski_eta(int d);
double minkowski_dot(const RVec& x, const RVec& y);
bool is_lorentz(const RMat& m, double tol = kDefaultTol);
bool is_orthochronous(const RMat& m);
bool is_proper(const RMat& m);  // det = +1

// Wedge boost Lambda_axis(t): rapidity -2 pi t in the (x0, x_axis) plane.
RMat boost_matrix(int d, int axis, double t);
// Spatial rotation, e_i -> cos(theta) e_i + sin(theta) e_j.
RMat rotation_matrix(int d, int i, int j, double theta);
// R_W for the axis wedge: negates x0 and x_axis.
RMat wedge_reflection(int d, int axis);

// ---------------------------------------------------------------- wedges --

struct Wedge {
  RMat lambda;  // proper orthochronous
  RVec a;
  int dim() const { return static_cast<int>(a.size()); }
};

Wedge standard_wedge(int d);
Wedge axis_wedge(int d, int axis);  // rotation image of W1 along another axis
Wedge transform_wedge(const RMat& lambda, const RVec& a, const Wedge& w);
bool wedge_contains(const Wedge& w, const RVec& x);
Wedge wedge_complement(const Wedge& w);  // causal complement
Wedge wedge_negate(const Wedge& w);      // image under x -> -x

// Canonical form: the two affine null functionals g(x) = c . x + beta cut
// out the wedge as {g_+ > 0, g_- > 0}; spatial parts are normalized to unit
// Euclidean norm, which forces c0 = -1 for one functional and +1 for the
// other, and the pair is ordered by c0.  Equality of wedges is equality of
// canonical forms.
struct WedgeCanonical {
  RVec cov_minus, cov_plus;  // covectors with c0 = -1 / +1
  double beta_minus, beta_plus;
};

WedgeCanonical wedge_canonical(const Wedge& w);
double wedge_deviation(const Wedge& u, const Wedge& v);
bool wedge_equal(const Wedge& u, const Wedge& v, double tol = kDefaultTol);

// ----------------------------------------------------- cones and duality --

struct DoubleCone {
  RVec center;
  double radius;  // O = { |x0 - c0| + ||xvec - cvec|| < r }
};

bool cone_contains(const DoubleCone& o, const RVec& x);

// Exact support criterion: the open cone lies in the open wedge iff
// g(center) >= r for both normalized functionals.
bool wedge_contains_cone(const Wedge& w, const DoubleCone& o,
                         double tol = kDefaultTol);

// The 2(d-1) axis wedges tangent to the cone (edge at distance r along each
// spatial direction); each contains the cone by construction.  Throws
// MalformedRegion for r <= 0.
std::vector<Wedge> dual_region(int d, const DoubleCone& o);

// Total reflection x -> -x maps the dual region of O onto the dual region of
// -O; returns the max canonical deviation over the matched wedge sets.
double dual_region_reflection_deviation(int d, const DoubleCone& o);

struct ConeSampleReport {
  int samples = 0;
  double min_margin_unboosted = 1e300;  // min over samples of x1 - |x0|
  double min_margin_boosted = 1e300;    // same after the W2 boost family
};

// Seeded sampling of the cone C_t = { sqrt(x0^2 + x2^2) < x1 / (sqrt(2)
// cosh 2 pi t) }: every sample must lie in W1 and stay there under the
// wedge-2 boosts with parameter in [-t, t].
ConeSampleReport cone_membership_check(int d, double t, int samples, Rng& rng);

// ------------------------------------------------------------ d = 4 cover --

CMat pauli(int k);  // 0 = identity, 1..3
RMat covering_matrix4(const CMat& a);  // Lambda(A), 4x4
CMat boost_lift(int axis, double rapidity);      // exp(rapidity sigma_k / 2)
CMat wedge_boost_lift(int axis, double t);       // exp(-pi t sigma_axis)
CMat rotation_lift(int i, int j, double theta);  // covers rotation_matrix(4,i,j,theta)

struct CoverElement4 {
  CMat a;      // SL(2, C)
  RVec trans;  // translation, applied after the homogeneous part

  static CoverElement4 identity();
  static CoverElement4 pure(const CMat& a);
  static CoverElement4 translation(const RVec& t);
};

CoverElement4 compose(const CoverElement4& x, const CoverElement4& y);
CoverElement4 inverse(const CoverElement4& x);
// (Lambda(A), trans) as a Poincare pair.
std::pair<RMat, RVec> covering_poincare(const CoverElement4& x);

// alpha = Ad(R_W1) on the proper cover: A -> sigma1 A sigma1 on SL(2, C)
// (the lift of the inner rotation r_23(pi)), trans -> R_W1 trans.
CoverElement4 alpha_cover4(const CoverElement4& x);

// Z_2 extension by the wedge reflection: the pair (g, n) stands for
// g . (R_W1-lift)^n with the twisted product (g1, n1)(g2, n2) =
// (g1 alpha^{n1}(g2), n1 + n2).
struct ProperCover4 {
  CoverElement4 g;
  int refl = 0;  // mod 2
};

ProperCover4 compose(const ProperCover4& x, const ProperCover4& y);
std::pair<RMat, RVec> covering_poincare(const ProperCover4& x);

// ------------------------------------------------------------ d = 3 cover --

struct CoverToken {
  enum class Kind { Boost1, Boost2, Rotation };
  Kind kind;
  double param;
};

struct CoverWord3 {
  std::vector<CoverToken> tokens;  // kept reduced
};

CoverWord3 word3_boost1(double t);
CoverWord3 word3_boost2(double t);
CoverWord3 word3_rotation(double theta);
CoverWord3 reduce_word3(const CoverWord3& w);
CoverWord3 compose(const CoverWord3& x, const CoverWord3& y);
CoverWord3 inverse(const CoverWord3& x);
bool word3_equal(const CoverWord3& x, const CoverWord3& y, double tol = kDefaultTol);
RMat covering_matrix3(const CoverWord3& w);  // to SO(2,1)^up
CoverWord3 alpha_word3(const CoverWord3& w);

struct ProperCover3 {
  CoverWord3 g;
  int refl = 0;
};

ProperCover3 compose(const ProperCover3& x, const ProperCover3& y);
RMat covering_matrix3(const ProperCover3& x);

}  // namespace wb
