// Numerics kernel tests.  The spectral calculus is checked against an
// independent 30-term Taylor oracle, and the antilinear composition calculus
// against direct pointwise evaluation, before either is used anywhere else.
#include "doctest.h"

#include <complex>

#include "wb/numerics.hpp"
#include "wb/rng.hpp"

using namespace wb;

namespace {

// Plain Taylor series; adequate for ||M|| <= 2 at 30 terms (tail < 2^30/30! ~ 4e-24).
CMat oracle_exp_taylor(const CMat& m) {
  CMat term = CMat::Identity(m.rows(), m.cols());
  CMat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

CMat random_hermitian_bounded(Rng& rng, int n, double max_norm) {
  CMat h = rng.hermitian_matrix(n);
  const double nrm = h.norm();
  if (nrm > max_norm) h *= max_norm / nrm;
  return h;
}

}  // namespace

TEST_CASE("spectral exp agrees with Taylor oracle") {
  Rng rng(derive_seed(20260821, "numerics-exp"));
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMat h = random_hermitian_bounded(rng, n, 2.0);
      const CMat via_spectral = mat_exp(h);
      const CMat via_taylor = oracle_exp_taylor(h);
      CHECK(rel_diff(via_spectral, via_taylor) < 1e-9);
    }
  }
}

TEST_CASE("herm_exp_scaled matches Taylor oracle for complex scales") {
  Rng rng(derive_seed(20260821, "numerics-exp-scaled"));
  const cxd scales[] = {{0.0, 1.0}, {0.0, -0.5}, {0.5, 0.0}, {0.3, 0.7}};
  for (const cxd alpha : scales) {
    const CMat h = random_hermitian_bounded(rng, 5, 2.0);
    CHECK(rel_diff(herm_exp_scaled(h, alpha), oracle_exp_taylor(alpha * h)) < 1e-9);
  }
}

TEST_CASE("log inverts exp and power functions compose") {
  Rng rng(derive_seed(20260821, "numerics-log"));
  for (int rep = 0; rep < 5; ++rep) {
    const CMat h = random_hermitian_bounded(rng, 4, 1.5);
    const CMat p = mat_exp(h);  // positive definite
    CHECK(rel_diff(mat_log(p), h) < 1e-9);
    CHECK(rel_diff(mat_sqrt(p) * mat_sqrt(p), p) < 1e-10);
    CHECK(rel_diff(mat_inv_sqrt(p) * mat_sqrt(p), CMat::Identity(4, 4)) < 1e-10);
  }
}

TEST_CASE("power_it is a unitary one-parameter group") {
  Rng rng(derive_seed(20260821, "numerics-power-it"));
  const CMat p = mat_exp(random_hermitian_bounded(rng, 5, 1.0));
  const double t = 0.7, s = -1.9;
  const CMat ut = mat_power_it(p, t);
  const CMat us = mat_power_it(p, s);
  CHECK(is_unitary(ut, 1e-10));
  CHECK(rel_diff(ut * us, mat_power_it(p, t + s)) < 1e-10);
  CHECK(rel_diff(mat_power_it(p, 0.0), CMat::Identity(5, 5)) < 1e-12);
}

TEST_CASE("spectrum guards throw the documented codes") {
  const CMat not_herm = (CMat(2, 2) << cxd(0, 0), cxd(1, 0), cxd(0, 0), cxd(0, 0)).finished();
  CHECK_THROWS_AS(mat_exp(not_herm), Error);
  try {
    mat_exp(not_herm);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitianInput);
  }

  CMat psd = CMat::Zero(2, 2);
  psd(0, 0) = 1.0;  // second eigenvalue exactly zero
  CHECK_NOTHROW(mat_sqrt(psd));
  try {
    mat_log(psd);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularForLog);
  }
  try {
    mat_inv_sqrt(psd);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularForLog);
  }
}

TEST_CASE("antilinear composition calculus matches pointwise evaluation") {
  Rng rng(derive_seed(20260821, "numerics-antilinear"));
  const int n = 5;
  const AntilinearMap a{rng.complex_matrix(n, n)};
  const AntilinearMap b{rng.complex_matrix(n, n)};
  const CMat m = rng.complex_matrix(n, n);

  for (int rep = 0; rep < 8; ++rep) {
    const CVec v = rng.complex_vector(n);
    // antilinear . antilinear = linear
    CHECK(rel_diff(CVec(compose(a, b) * v), a.apply(b.apply(v))) < 1e-12);
    // antilinear . linear and linear . antilinear
    CHECK(rel_diff(compose(a, m).apply(v), a.apply(CVec(m * v))) < 1e-12);
    CHECK(rel_diff(compose(m, a).apply(v), CVec(m * a.apply(v))) < 1e-12);
    // inverse
    CHECK(rel_diff(a.inverse().apply(a.apply(v)), v) < 1e-10);
  }
}

TEST_CASE("antilinear adjoint satisfies <u, A v> = <v, A^dag u>") {
  Rng rng(derive_seed(20260821, "numerics-adjoint"));
  const int n = 4;
  const AntilinearMap a{rng.complex_matrix(n, n)};
  const AntilinearMap ad = a.adjoint();
  for (int rep = 0; rep < 8; ++rep) {
    const CVec u = rng.complex_vector(n), v = rng.complex_vector(n);
    const cxd lhs = u.adjoint() * a.apply(v);
    const cxd rhs = v.adjoint() * ad.apply(u);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("polar decomposition of an antilinear map") {
  Rng rng(derive_seed(20260821, "numerics-polar"));
  for (int rep = 0; rep < 6; ++rep) {
    const int n = 2 + rng.index(5);
    AntilinearMap s{rng.complex_matrix(n, n)};
    const AntilinearPolar pol = polar_antilinear(s);
    CHECK(pol.j.is_antiunitary(1e-10));
    CHECK(is_hermitian(pol.delta, 1e-12));
    CHECK(spectral_decompose(pol.delta).eigenvalues.minCoeff() > 0.0);
    // Reassembly S = J Delta^{1/2}.
    const AntilinearMap reassembled = compose(pol.j, mat_sqrt(pol.delta));
    CHECK(rel_diff(reassembled.linear, s.linear) < 1e-9);
  }
}

TEST_CASE("polar of the n=1 phase conjugation is the map itself") {
  const cxd phase = std::polar(1.0, 1.234);
  AntilinearMap s{(CMat(1, 1) << phase).finished()};
  const AntilinearPolar pol = polar_antilinear(s);
  CHECK(std::abs(pol.delta(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(pol.j.linear(0, 0) - phase) < 1e-14);
}

TEST_CASE("polar rejects singular maps") {
  CMat l = CMat::Zero(3, 3);
  l(0, 0) = 1.0;
  l(1, 1) = 1.0;
  try {
    polar_antilinear(AntilinearMap{l});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularOperator);
  }
}

TEST_CASE("J^2 is not a phase for a generic antiunitary polar part") {
  // L = [[0,1],[e^{i phi},0]] is antiunitary, so S = J; J^2 has matrix
  // L conj(L) = diag(e^{-i phi}, e^{i phi}), not proportional to the identity.
  const cxd ph = std::polar(1.0, 0.8);
  AntilinearMap s{(CMat(2, 2) << cxd(0), cxd(1), ph, cxd(0)).finished()};
  const AntilinearPolar pol = polar_antilinear(s);
  const CMat j2 = compose(pol.j, pol.j);
  const cxd top = j2(0, 0);
  CHECK(std::abs(j2(1, 1) - top) > 0.5);  // genuinely not scalar
}

TEST_CASE("HS orthonormalization") {
  Rng rng(derive_seed(20260821, "numerics-hs"));
  std::vector<CMat> family;
  const CMat a = rng.complex_matrix(3, 3);
  const CMat b = rng.complex_matrix(3, 3);
  CHECK(hs_orthonormal_append(family, a) > 0.99);
  CHECK(hs_orthonormal_append(family, b) > 0.1);
  REQUIRE(family.size() == 2);
  CHECK(std::abs(hs_inner(family[0], family[1])) < 1e-12);
  CHECK(std::abs(hs_inner(family[0], family[0]) - 1.0) < 1e-12);
  // A linear combination of the family is rejected.
  const CMat dep = 0.3 * family[0] - cxd(0, 1.7) * family[1];
  CHECK(hs_orthonormal_append(family, dep) < 1e-12);
  CHECK(family.size() == 2);
}
