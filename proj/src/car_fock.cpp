#include "wb/car_fock.hpp"

#include <algorithm>
#include <bit>

#include "wb/tomita.hpp"

namespace wb {

FockModel FockModel::build(int n_modes) {
  require(n_modes >= 1 && n_modes <= kMaxModes, ErrorCode::ModeCapExceeded,
          "mode count outside [1, 12]");
  FockModel m;
  m.modes = n_modes;
  m.dim = 1 << n_modes;
  m.create.reserve(n_modes);
  m.annihilate.reserve(n_modes);
  for (int k = 0; k < n_modes; ++k) {
    SparseC up(m.dim, m.dim);
    std::vector<Eigen::Triplet<cxd>> trip;
    trip.reserve(m.dim / 2);
    const unsigned lower = (1u << k) - 1u;
    for (int b = 0; b < m.dim; ++b) {
      if (b & (1 << k)) continue;
      const int sign = (std::popcount(static_cast<unsigned>(b) & lower) & 1) ? -1 : 1;
      trip.emplace_back(b | (1 << k), b, cxd(sign, 0));
    }
    up.setFromTriplets(trip.begin(), trip.end());
    m.create.push_back(up);
    m.annihilate.push_back(SparseC(up.adjoint()));
  }
  return m;
}

CMat FockModel::dense_create(int k) const {
  require(k >= 0 && k < modes, ErrorCode::BadAxis, "mode index out of range");
  require(modes <= kMaxDenseModes, ErrorCode::DimensionCapExceeded,
          "dense materialization capped at 10 modes");
  return CMat(create[k]);
}

CMat FockModel::gamma() const {
  require(modes <= kMaxDenseModes, ErrorCode::DimensionCapExceeded,
          "dense materialization capped at 10 modes");
  CMat g = CMat::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    g(b, b) = (std::popcount(static_cast<unsigned>(b)) & 1) ? -1.0 : 1.0;
  return g;
}

CMat FockModel::twist_z() const {
  require(modes <= kMaxDenseModes, ErrorCode::DimensionCapExceeded,
          "dense materialization capped at 10 modes");
  CMat z = CMat::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    z(b, b) = (std::popcount(static_cast<unsigned>(b)) & 1) ? cxd(0, -1) : cxd(1, 0);
  return z;
}

CMat FockModel::number_op() const {
  require(modes <= kMaxDenseModes, ErrorCode::DimensionCapExceeded,
          "dense materialization capped at 10 modes");
  CMat n = CMat::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    n(b, b) = static_cast<double>(std::popcount(static_cast<unsigned>(b)));
  return n;
}

int monomial_parity(const Monomial& m) {
  int p = 0;
  for (ModeFactor f : m)
    if (f == ModeFactor::Create || f == ModeFactor::Annihilate) p ^= 1;
  return p;
}

namespace {

CVec apply_factor(const FockModel& model, int k, ModeFactor f, const CVec& v) {
  switch (f) {
    case ModeFactor::One:        return v;
    case ModeFactor::Create:     return model.create[k] * v;
    case ModeFactor::Annihilate: return model.annihilate[k] * v;
    case ModeFactor::Number:     return model.create[k] * (model.annihilate[k] * v);
  }
  return v;
}

ModeFactor factor_adjoint(ModeFactor f) {
  switch (f) {
    case ModeFactor::Create:     return ModeFactor::Annihilate;
    case ModeFactor::Annihilate: return ModeFactor::Create;
    default:                     return f;
  }
}

}  // namespace

CVec apply_monomial(const FockModel& model, const Monomial& m, const CVec& v,
                    bool dagger) {
  require(static_cast<int>(m.size()) == model.modes, ErrorCode::DimensionMismatch,
          "monomial length differs from mode count");
  CVec out = v;
  if (!dagger) {
    // product f_0 f_1 ... f_{r-1}: rightmost factor acts first
    for (int k = model.modes - 1; k >= 0; --k)
      out = apply_factor(model, k, m[k], out);
  } else {
    // adjoint reverses the order and daggers each factor
    for (int k = 0; k < model.modes; ++k)
      out = apply_factor(model, k, factor_adjoint(m[k]), out);
  }
  return out;
}

CMat dense_monomial(const FockModel& model, const Monomial& m) {
  require(model.modes <= kMaxDenseModes, ErrorCode::DimensionCapExceeded,
          "dense materialization capped at 10 modes");
  CMat out(model.dim, model.dim);
  for (int b = 0; b < model.dim; ++b) {
    CVec e = CVec::Zero(model.dim);
    e(b) = 1.0;
    out.col(b) = apply_monomial(model, m, e);
  }
  return out;
}

std::vector<Monomial> monomials_on(int n_modes, const std::vector<int>& support) {
  for (int k : support)
    require(k >= 0 && k < n_modes, ErrorCode::BadAxis, "support mode out of range");
  std::size_t count = 1;
  for (std::size_t i = 0; i < support.size(); ++i) count *= 4;
  std::vector<Monomial> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    Monomial m(n_modes, ModeFactor::One);
    std::size_t c = code;
    for (int k : support) {
      m[k] = static_cast<ModeFactor>(c & 3);
      c >>= 2;
    }
    out.push_back(std::move(m));
  }
  return out;
}

double twist_conjugation_residual(const FockModel& model, const CMat& x,
                                  int declared_parity, double tol) {
  const CMat g = model.gamma();
  const CMat graded = g * x * g;
  const double sign = declared_parity == 0 ? 1.0 : -1.0;
  require((graded - sign * x).norm() <= tol * std::max(1.0, x.norm()),
          ErrorCode::WrongParity, "operator does not have the declared parity");
  const CMat z = model.twist_z();
  const CMat lhs = z * x * z.adjoint();
  const CMat rhs = declared_parity == 0 ? x : CMat(cxd(0, 1) * g * x);
  return rel_diff(lhs, rhs);
}

double twist_reality_residual(const FockModel& model, const AntilinearMap& v,
                              double tol) {
  const int n = model.dim;
  require(v.dim() == n, ErrorCode::DimensionMismatch, "antiunitary has wrong dimension");
  require(v.is_antiunitary(tol), ErrorCode::WrongParity,
          "map is not antiunitary");
  require(rel_diff(compose(v, v), CMat::Identity(n, n)) <= tol,
          ErrorCode::WrongParity, "antiunitary is not an involution");
  const CMat g = model.gamma();
  require(rel_diff(compose(v, compose(g, v)), g) <= tol, ErrorCode::WrongParity,
          "antiunitary does not commute with the grading");
  const CMat z = model.twist_z();
  // V Z V as a linear map: L conj(Z) conj(L).
  const CMat vzv = compose(v, compose(z, v));
  return rel_diff(vzv, z.adjoint());
}

TwistedLocalityReport twisted_locality_check(const FockModel& model,
                                             const std::vector<int>& modes_a,
                                             const std::vector<int>& modes_b) {
  for (int a : modes_a)
    require(std::find(modes_b.begin(), modes_b.end(), a) == modes_b.end(),
            ErrorCode::OverlappingRegions, "mode sets overlap");
  const CMat g = model.gamma();
  const CMat z = model.twist_z();
  const auto ms_a = monomials_on(model.modes, modes_a);
  const auto ms_b = monomials_on(model.modes, modes_b);

  TwistedLocalityReport rep;
  for (const Monomial& ma : ms_a) {
    const CMat m1 = dense_monomial(model, ma);
    const CMat tm1 = z * m1 * z.adjoint();
    const int pa = monomial_parity(ma);
    for (const Monomial& mb : ms_b) {
      const CMat m2 = dense_monomial(model, mb);
      const int pb = monomial_parity(mb);
      const CMat twisted = tm1 * m2 - m2 * tm1;
      const CMat graded = (pa == 1 && pb == 1) ? CMat(m1 * m2 + m2 * m1)
                                               : CMat(m1 * m2 - m2 * m1);
      rep.max_twisted_commutator = std::max(rep.max_twisted_commutator, twisted.norm());
      rep.max_graded_commutator = std::max(rep.max_graded_commutator, graded.norm());
      if (pa == 1 && pb == 1) {
        const CMat bridge = twisted - cxd(0, 1) * g * (m1 * m2 + m2 * m1);
        rep.max_bridge_residual = std::max(rep.max_bridge_residual, bridge.norm());
      }
      ++rep.pairs_checked;
    }
  }
  return rep;
}

QuasifreeOracle quasifree_modular_oracle(const CMat& g, double tol) {
  const int r = static_cast<int>(g.rows());
  require(r >= 1 && r <= 4, ErrorCode::ModeCapExceeded,
          "quasi-free oracle capped at 4 modes");
  require(is_hermitian(g, tol), ErrorCode::NonHermitianInput,
          "two-point matrix must be Hermitian");
  const SpectralDecomposition sd = spectral_decompose(g, tol);
  require(sd.eigenvalues.minCoeff() > 1e-8 && sd.eigenvalues.maxCoeff() < 1.0 - 1e-8,
          ErrorCode::NotFaithful,
          "two-point spectrum must lie strictly inside (0, 1)");

  const FockModel doubled = FockModel::build(2 * r);
  const int big = doubled.dim;

  // Purification: Omega = prod_k (c_k + s_k b_k^dag abar_k^dag)|0>, with
  // b_k^dag = sum_i conj(W_ik) a_i^dag on the system modes and abar_k the
  // untouched ancilla partner, so that <a_i^dag a_j> = G_ij.
  CVec omega = CVec::Zero(big);
  omega(0) = 1.0;
  for (int k = 0; k < r; ++k) {
    const double gk = sd.eigenvalues(k);
    const double c = std::sqrt(1.0 - gk), s = std::sqrt(gk);
    const CVec anc = doubled.create[r + k] * omega;
    CVec paired = CVec::Zero(big);
    for (int i = 0; i < r; ++i)
      paired += std::conj(sd.eigenvectors(i, k)) * (doubled.create[i] * anc);
    omega = c * omega + s * paired;
  }

  QuasifreeOracle out;
  out.omega = omega;

  // Covariance check against G.
  std::vector<CVec> lowered(r);
  for (int i = 0; i < r; ++i) lowered[i] = doubled.annihilate[i] * omega;
  double cov = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const cxd got = lowered[i].adjoint() * lowered[j];
      cov = std::max(cov, std::abs(got - g(i, j)));
    }
  out.covariance_residual = cov;

  // GNS evaluation maps of CAR(system) column by column.
  std::vector<int> system(r);
  for (int i = 0; i < r; ++i) system[i] = i;
  const auto monos = monomials_on(2 * r, system);
  require(static_cast<int>(monos.size()) == big, ErrorCode::DimensionMismatch,
          "monomial count mismatch");
  CMat eval(big, big), eval_star(big, big);
  for (int j = 0; j < big; ++j) {
    eval.col(j) = apply_monomial(doubled, monos[j], omega, false);
    eval_star.col(j) = apply_monomial(doubled, monos[j], omega, true);
  }
  const ModularData md = modular_from_evaluations(eval, eval_star, omega, tol);
  out.delta = md.delta;

  RVec logs = spectral_decompose(md.delta, tol).eigenvalues;
  for (int i = 0; i < logs.size(); ++i) logs(i) = std::log(logs(i));
  std::sort(logs.data(), logs.data() + logs.size());
  out.gns_log_spectrum = logs;

  // Closed-form multiset: sum_k eps_k (mbar_k - m_k) over all pair
  // occupations.
  RVec formula(big);
  for (int code = 0; code < big; ++code) {
    double acc = 0.0;
    for (int k = 0; k < r; ++k) {
      const int m = (code >> (2 * k)) & 1;
      const int mbar = (code >> (2 * k + 1)) & 1;
      acc += quasifree_mode_log_ratio(sd.eigenvalues(k)) * (mbar - m);
    }
    formula(code) = acc;
  }
  std::sort(formula.data(), formula.data() + formula.size());
  out.formula_log_spectrum = formula;
  out.spectrum_residual = (logs - formula).cwiseAbs().maxCoeff();
  return out;
}

namespace {

// m must equal (+-1) * identity; returns the sign, guarding the rounding.
int extract_sign_scalar(const CMat& m) {
  const int sign = m(0, 0).real() >= 0.0 ? 1 : -1;
  const CMat target = static_cast<double>(sign) * CMat::Identity(m.rows(), m.cols());
  require(rel_diff(m, target) <= 1e-9, ErrorCode::WrongParity,
          "exchange operator is not a sign times the identity");
  return sign;
}

}  // namespace

std::vector<SectorInfo> sector_statistics(const FockModel& model) {
  require(model.modes >= 2, ErrorCode::ModeCapExceeded,
          "sector statistics needs two disjoint localization modes");
  int even = 0;
  for (int b = 0; b < model.dim; ++b)
    if (!(std::popcount(static_cast<unsigned>(b)) & 1)) ++even;

  // Statistics phase from the exchange of two self-inverse implementers with
  // disjoint supports: F1 F2 F1^{-1} F2^{-1} = kappa * 1.  Even sector:
  // u_k = 1 - 2 n_k; odd sector: Majorana c_k = a_k + a_k^dag.
  const CMat id = CMat::Identity(model.dim, model.dim);
  const CMat u0 = id - 2.0 * CMat(model.create[0] * model.annihilate[0]);
  const CMat u1 = id - 2.0 * CMat(model.create[1] * model.annihilate[1]);
  const CMat c0 = CMat(model.create[0]) + CMat(model.annihilate[0]);
  const CMat c1 = CMat(model.create[1]) + CMat(model.annihilate[1]);
  const int kappa_even = extract_sign_scalar(u0 * u1 * u0 * u1);
  const int kappa_odd = extract_sign_scalar(c0 * c1 * c0 * c1);

  return {
      {"even", even, kappa_even, 1.0, 1.0},
      {"odd", model.dim - even, kappa_odd, 1.0, 1.0},
  };
}

}  // namespace wb
