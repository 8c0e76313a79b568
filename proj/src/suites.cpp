#include "wb/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wb/car_fock.hpp"
#include "wb/errors.hpp"
#include "wb/lorentz.hpp"
#include "wb/rep_models.hpp"
#include "wb/rng.hpp"
#include "wb/standard_subspace.hpp"
#include "wb/tomita.hpp"

namespace wb {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kReportVersion = "1.0.0";

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Clock = std::chrono::steady_clock;

// Collects the records of one suite; each record's wall time covers the work
// since the previous record (or since construction for the first).
struct SuiteRun {
  std::string suite;
  double tol;
  std::vector<CheckRecord> records;
  Clock::time_point mark = Clock::now();

  SuiteRun(std::string name, double t) : suite(std::move(name)), tol(t) {}

  void add(const std::string& id, const std::string& anchor,
           const std::string& params, double residual) {
    const Clock::time_point now = Clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(now - mark).count();
    mark = now;
    records.push_back(
        {suite, id, anchor, params, residual, tol, residual <= tol, ms});
  }
};

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// ---------------------------------------------------------- property_ii --

void suite_property_ii(SuiteRun& r, const SuiteConfig& cfg, Rng&) {
  const double ts[] = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  for (int m = cfg.dims_lo; m <= cfg.dims_hi; ++m) {
    const Sl2Rep rep = finite_sl2_rep(m);
    for (const double t : ts) {
      r.add("commutation/m=" + std::to_string(m) + "/t=" + fmt_g(t),
            "Thm 1.1 (ii)",
            "m=" + std::to_string(m) + "; t=" + fmt_g(t) +
                "; flow_norm=" + fmt_g(flow_norm(rep, t)),
            property_ii_residual(rep, t));
    }
    r.add("bracket/m=" + std::to_string(m), "Thm 1.1 (ii)",
          "m=" + std::to_string(m), bracket_closure_residual(rep));
  }
}

// ---------------------------------------------------- standard_subspace --

void suite_standard_subspace(SuiteRun& r, const SuiteConfig& cfg, Rng& rng) {
  const int n_sub = cfg.samples > 0 ? cfg.samples : 50;
  const int n_max = std::min(cfg.dims_hi, 8);
  const CMat* unused = nullptr;
  (void)unused;
  for (int k = 0; k < n_sub; ++k) {
    const int n = 2 + (n_max > 2 ? k % (n_max - 1) : 0);
    const std::string params = "k=" + std::to_string(k) + "; n=" +
                               std::to_string(n);
    const auto id = [&](const char* law) {
      return std::string(law) + "/k=" + std::to_string(k);
    };
    const StandardSubspace kk = random_standard_subspace(n, rng);
    const TomitaData td = tomita_data(kk);
    const CMat eye = CMat::Identity(n, n);

    r.add(id("j-squared"), "Tomita–Takesaki", params,
          rel_diff(compose(td.j, td.j), eye));
    r.add(id("jdj-inverse"), "Tomita–Takesaki", params,
          rel_diff(compose(compose(td.j, td.delta), td.j),
                   CMat(td.delta.inverse())));
    r.add(id("reassembly"), "Tomita–Takesaki", params,
          rel_diff(compose(td.j, mat_sqrt(td.delta)).linear, td.s.linear));
    double fix = 0.0;
    for (int c = 0; c < kk.basis.cols(); ++c) {
      const CVec v = kk.basis.col(c);
      fix = std::max(fix, (td.s.apply(v) - v).norm() / v.norm());
    }
    r.add(id("s-fixes-k"), "Tomita–Takesaki", params, fix);

    r.add(id("flow-preserves-k"), "Prop 2.5", params + "; t=0.7",
          subspace_distance(map_subspace(mat_power_it(td.delta, 0.7), kk), kk));
    const StandardSubspace kprime = symplectic_complement(kk);
    r.add(id("jk-complement"), "Prop 2.5", params,
          subspace_distance(map_subspace(td.j, kk), kprime));
    r.add(id("complement-flow"), "Prop 2.5", params,
          rel_diff(tomita_data(kprime).delta, CMat(td.delta.inverse())));
  }
}

// ------------------------------------------------------- tomita_finite --

CVec random_cyclic_vector(int dim, Rng& rng) {
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.cnormal();
  return v / v.norm();
}

void tomita_records(SuiteRun& r, const std::string& tag,
                    const FiniteVNAlgebra& alg, const FiniteVNAlgebra& comm,
                    const CVec& omega) {
  const ModularData md = modular_data(alg, omega);
  const ModularCheckReport rep =
      verify_modular_theorem(alg, comm, md, {0.5, -1.3});
  const std::string params = "space_dim=" + std::to_string(alg.space_dim) +
                             "; alg_dim=" + std::to_string(alg.dim());
  r.add("flow-membership/" + tag, "Tomita–Takesaki", params,
        rep.max_flow_residual);
  r.add("commutant-membership/" + tag, "Tomita–Takesaki", params,
        rep.max_commutant_residual);
  r.add("s-action/" + tag, "Tomita–Takesaki", params, rep.s_action_residual);
  r.add("kms-boundary/" + tag, "KMS condition", params, rep.max_kms_residual);
}

void suite_tomita_finite(SuiteRun& r, const SuiteConfig&, Rng& rng) {
  const CMat eye2 = CMat::Identity(2, 2);
  const CMat eye3 = CMat::Identity(3, 3);

  // Factor M2 (x) 1 on C^4.
  const FiniteVNAlgebra m2 =
      generate_vn_algebra({kron(pauli(1), eye2), kron(pauli(3), eye2)});
  const FiniteVNAlgebra m2c = commutant(m2);
  tomita_records(r, "m2x1", m2, m2c, random_cyclic_vector(4, rng));
  {
    const CenterData cd = center_data(m2, m2c, rng);
    r.add("center-trivial/m2x1", "Prop 3.1", "space_dim=4",
          cd.is_factor ? 0.0 : 1.0);
  }

  // Factor M3 (x) 1 on C^9: shift and clock generators.
  CMat s3 = CMat::Zero(3, 3);
  s3(0, 2) = s3(1, 0) = s3(2, 1) = 1.0;
  CMat d3 = CMat::Zero(3, 3);
  const cxd w3 = std::exp(cxd(0.0, 2.0 * kPi / 3.0));
  d3(0, 0) = 1.0;
  d3(1, 1) = w3;
  d3(2, 2) = w3 * w3;
  const FiniteVNAlgebra m3 =
      generate_vn_algebra({kron(s3, eye3), kron(d3, eye3)});
  const FiniteVNAlgebra m3c = commutant(m3);
  tomita_records(r, "m3x1", m3, m3c, random_cyclic_vector(9, rng));

  // Direct sum (M2 (x) 1) + C on C^5: nontrivial center with blocks 4 and 1.
  CMat g1 = CMat::Zero(5, 5), g2 = CMat::Zero(5, 5), g3 = CMat::Zero(5, 5);
  g1.topLeftCorner(4, 4) = kron(pauli(1), eye2);
  g2.topLeftCorner(4, 4) = kron(pauli(3), eye2);
  g3(4, 4) = 1.0;
  const FiniteVNAlgebra ms = generate_vn_algebra({g1, g2, g3});
  const FiniteVNAlgebra msc = commutant(ms);
  tomita_records(r, "m2x1+c", ms, msc, random_cyclic_vector(5, rng));
  const CenterData cd = center_data(ms, msc, rng);
  std::vector<int> dims = cd.block_dims;
  std::sort(dims.begin(), dims.end());
  const bool blocks_ok = static_cast<int>(cd.basis.size()) == 2 &&
                         dims == std::vector<int>({1, 4});
  r.add("center-blocks/m2x1+c", "Prop 3.1", "space_dim=5",
        blocks_ok ? 0.0 : 1.0);
  double proj_res = 0.0;
  CMat sum = CMat::Zero(5, 5);
  for (const CMat& p : cd.minimal_projections) {
    proj_res = std::max(proj_res, (p * p - p).norm());
    proj_res = std::max(proj_res, (p - p.adjoint()).norm());
    proj_res = std::max(proj_res, ms.membership_residual(p));
    proj_res = std::max(proj_res, msc.membership_residual(p));
    sum += p;
  }
  proj_res = std::max(proj_res, (sum - CMat::Identity(5, 5)).norm());
  r.add("center-projections/m2x1+c", "Prop 3.1", "space_dim=5", proj_res);
}

// ----------------------------------------------------------- quasifree --

void suite_quasifree(SuiteRun& r, const SuiteConfig& cfg, Rng& rng) {
  for (int modes = 1; modes <= cfg.modes; ++modes) {
    CMat h = rng.hermitian_matrix(modes);
    const CMat g =
        (CMat::Identity(modes, modes) + h / (2.0 * h.norm())) / 2.0;
    const QuasifreeOracle q = quasifree_modular_oracle(g);
    const std::string params = "modes=" + std::to_string(modes);
    r.add("covariance/modes=" + std::to_string(modes), "Lemma 3.4", params,
          q.covariance_residual);
    r.add("log-spectrum/modes=" + std::to_string(modes), "Lemma 3.4",
          params + "; levels=" + std::to_string(q.gns_log_spectrum.size()),
          q.spectrum_residual);

    if (modes <= 2) {
      // Independent route: dense generated algebra on the doubled space and
      // the generic modular construction from the purified vector.
      const FockModel doubled = FockModel::build(2 * modes);
      std::vector<CMat> gens;
      for (int k = 0; k < modes; ++k) gens.push_back(doubled.dense_create(k));
      const FiniteVNAlgebra alg = generate_vn_algebra(gens, 64);
      const ModularData md = modular_data(alg, q.omega);
      RVec logs = spectral_decompose(md.delta).eigenvalues;
      for (int i = 0; i < logs.size(); ++i) logs(i) = std::log(logs(i));
      std::sort(logs.data(), logs.data() + logs.size());
      r.add("dense-cross-check/modes=" + std::to_string(modes),
            "Tomita–Takesaki", params,
            (logs - q.gns_log_spectrum).cwiseAbs().maxCoeff());
    }
  }
}

// --------------------------------------------------------------- twist --

void suite_twist(SuiteRun& r, const SuiteConfig&, Rng&) {
  for (const int n : {1, 2, 3, 4}) {
    const FockModel model = FockModel::build(n);
    const std::string params = "n=" + std::to_string(n);
    const CMat z = model.twist_z();
    const CMat gam = model.gamma();
    const CMat eye = CMat::Identity(model.dim, model.dim);

    double zres = rel_diff(z, CMat((eye + cxd(0, 1) * gam) / cxd(1, 1)));
    zres = std::max(zres, (z * z - gam).norm());
    zres = std::max(zres, (z * z * z * z - eye).norm());
    r.add("z-algebra/n=" + std::to_string(n), "Eq. (2.1)", params, zres);

    std::vector<int> support(n);
    for (int k = 0; k < n; ++k) support[k] = k;
    double even_res = 0.0, odd_res = 0.0;
    int n_even = 0, n_odd = 0;
    for (const Monomial& mono : monomials_on(n, support)) {
      const int parity = monomial_parity(mono);
      const double res =
          twist_conjugation_residual(model, dense_monomial(model, mono), parity);
      if (parity == 0) {
        even_res = std::max(even_res, res);
        ++n_even;
      } else {
        odd_res = std::max(odd_res, res);
        ++n_odd;
      }
    }
    r.add("conjugation-even/n=" + std::to_string(n), "Eq. (2.3)",
          params + "; monomials=" + std::to_string(n_even), even_res);
    r.add("conjugation-odd/n=" + std::to_string(n), "Eq. (2.3)",
          params + "; monomials=" + std::to_string(n_odd), odd_res);

    r.add("reality-conjugation/n=" + std::to_string(n), "Lemma 2.2", params,
          twist_reality_residual(model, AntilinearMap::conjugation(model.dim)));
    r.add("reality-graded-conjugation/n=" + std::to_string(n), "Lemma 2.2",
          params,
          twist_reality_residual(
              model, compose(gam, AntilinearMap::conjugation(model.dim))));

    if (n < 2) continue;  // locality needs two disjoint nonempty mode sets
    const std::vector<int> left(support.begin(), support.begin() + n / 2);
    const std::vector<int> right(support.begin() + n / 2, support.end());
    const TwistedLocalityReport loc =
        twisted_locality_check(model, left, right);
    const std::string lparams =
        params + "; pairs=" + std::to_string(loc.pairs_checked);
    r.add("locality-twisted/n=" + std::to_string(n), "Prop 2.1", lparams,
          loc.max_twisted_commutator);
    r.add("locality-graded/n=" + std::to_string(n), "Prop 2.1", lparams,
          loc.max_graded_commutator);
    r.add("locality-bridge/n=" + std::to_string(n), "Prop 2.1", lparams,
          loc.max_bridge_residual);
  }
}

// ----------------------------------------------------- identity_chains --

std::string chain_anchor(const std::string& label) {
  if (label.rfind("cor27", 0) == 0) return "Cor 2.7";
  if (label.rfind("flow-covariance", 0) == 0) return "Eq. (2.5)";
  if (label.rfind("refl-cov", 0) == 0) return "Eq. (2.9)";
  if (label.rfind("pct", 0) == 0) return "Thm 3.2(c)";
  if (label.rfind("braid", 0) == 0 || label.rfind("j-dihedral", 0) == 0)
    return "Thm 2.11";
  return "Lemma 2.2";  // twist-involution / twist-adjoint
}

void chain_records(SuiteRun& r, const OpIdentity& ident, int two_s,
                   double mass, Rng& rng, int wavefns, int points) {
  const IdentityChainResult res =
      verify_identity(ident, mass, rng, wavefns, points);
  const std::string anchor = chain_anchor(ident.label);
  const std::string base =
      ident.label + "/s=" + (two_s == 0 ? "0" : "half") + "/m=" + fmt_g(mass);
  const std::string params = "two_s=" + std::to_string(two_s) +
                             "; mass=" + fmt_g(mass) +
                             "; wavefns=" + std::to_string(wavefns) +
                             "; points=" + std::to_string(points);
  r.add(base + "/word", anchor, params, res.word_deviation);
  r.add(base + "/pointwise", anchor, params, res.pointwise_residual);
}

void suite_identity_chains(SuiteRun& r, const SuiteConfig& cfg, Rng& rng) {
  const int wavefns = cfg.samples > 0 ? cfg.samples : 20;
  const int points = 100;
  for (const int two_s : {0, 1}) {
    for (const double mass : {1.0, 0.5}) {
      for (const OpIdentity& ident : standard_identity_set(two_s, 0.37, 0.9))
        chain_records(r, ident, two_s, mass, rng, wavefns, points);
    }
    // Five-point t grid for the wedge-reflection flow identities.
    const WedgeOp j1 = j_op(1, two_s);
    for (const double t : {-2.0, -1.0, 0.5, 1.0, 2.0}) {
      const OpIdentity opp{"cor27-opposite-flow/t=" + fmt_g(t),
                           {j1, delta_it_op(2, t, two_s), j1},
                           {delta_it_op(2, -t, two_s)}};
      chain_records(r, opp, two_s, 1.0, rng, wavefns, points);
      const OpIdentity own{"cor27-own-flow/t=" + fmt_g(t),
                           {j1, delta_it_op(1, t, two_s), j1},
                           {delta_it_op(1, t, two_s)}};
      chain_records(r, own, two_s, 1.0, rng, wavefns, points);
    }
  }
}

// ------------------------------------------------------ spin_statistics --

void suite_spin_statistics(SuiteRun& r, const SuiteConfig&, Rng&) {
  const SpinStatisticsRow rows[] = {spin_statistics_row(0),
                                    spin_statistics_row(1)};
  for (const SpinStatisticsRow& row : rows) {
    const std::string s = row.two_s == 0 ? "0" : "half";
    r.add("rotation-vs-braid/s=" + s, "Thm 2.11",
          "rotation_sign=" + std::to_string(row.rotation_sign) +
              "; braid_sign=" + std::to_string(row.braid_sign),
          std::abs(row.rotation_sign - row.braid_sign));
  }
  const FockModel model = FockModel::build(4);
  const std::vector<SectorInfo> sectors = sector_statistics(model);
  for (const SectorInfo& sec : sectors) {
    const bool even = std::string(sec.name) == "even";
    const SpinStatisticsRow& row = even ? rows[0] : rows[1];
    const std::string params = std::string("sector=") + sec.name +
                               "; kappa=" + std::to_string(sec.kappa) +
                               "; dim=" + std::to_string(sec.subspace_dim);
    r.add(std::string("sector-phase/") + sec.name, "Thm 3.3", params,
          std::abs(sec.kappa - row.rotation_sign));
    r.add(std::string("sector-dim/") + sec.name, "Thm 3.3", params,
          std::abs(sec.statistics_dim - 1.0));
    r.add(std::string("sector-index/") + sec.name, "Thm 3.3", params,
          std::abs(sec.froehlich_index - 1.0));
  }
}

// ------------------------------------------------------ wedge_geometry --

void suite_wedge_geometry(SuiteRun& r, const SuiteConfig& cfg, Rng& rng) {
  // PCT region map at the geometric level: in d = 4 the PCT reflection is
  // x -> -x; every wedge in the dual region of O, reflected, contains -O.
  std::vector<DoubleCone> cones;
  {
    RVec c0 = RVec::Zero(4);
    cones.push_back({c0, 1.0});
    RVec c1 = RVec::Zero(4);
    c1(1) = 0.3;
    cones.push_back({c1, 2.0});
    for (int k = 0; k < 3; ++k) {
      RVec c(4);
      for (int i = 0; i < 4; ++i) c(i) = rng.uniform(-1.0, 1.0);
      cones.push_back({c, rng.uniform(0.5, 2.0)});
    }
  }
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const DoubleCone& o = cones[k];
    const DoubleCone o_neg{-o.center, o.radius};
    const std::vector<Wedge> ws = dual_region(4, o);
    int failures = 0;
    for (const Wedge& w : ws)
      if (!wedge_contains_cone(wedge_negate(w), o_neg)) ++failures;
    const std::string params = "cone=" + std::to_string(k) +
                               "; wedges=" + std::to_string(ws.size()) +
                               "; radius=" + fmt_g(o.radius);
    r.add("pct-region-map/cone=" + std::to_string(k), "Eq. (2.10)", params,
          static_cast<double>(failures));
    for (const int d : {3, 4}) {
      DoubleCone od{o.center.head(d), o.radius};
      r.add("dual-reflection/d=" + std::to_string(d) +
                "/cone=" + std::to_string(k),
            "Eq. (2.10)", params + "; d=" + std::to_string(d),
            dual_region_reflection_deviation(d, od));
    }
  }

  // Cone containment under the wedge-2 boost family.
  const int samples = cfg.samples > 0 ? cfg.samples : 1000;
  for (const int d : {3, 4}) {
    for (const double t : {0.1, 0.7, 2.0}) {
      const ConeSampleReport rep = cone_membership_check(d, t, samples, rng);
      const double margin =
          std::min(rep.min_margin_unboosted, rep.min_margin_boosted);
      r.add("cone-membership/d=" + std::to_string(d) + "/t=" + fmt_g(t),
            "Prop 2.6",
            "d=" + std::to_string(d) + "; t=" + fmt_g(t) +
                "; samples=" + std::to_string(rep.samples) +
                "; min_margin=" + fmt_g(margin),
            std::max(0.0, -margin));
    }
  }

  // Covering arithmetic in d = 4: homomorphism, the reflection automorphism,
  // and the 2 pi rotation.
  const auto random_cover = [&rng]() {
    const int axis = 1 + rng.index(3);
    const int pl = rng.index(3);
    const int pi1 = pl == 0 ? 1 : pl == 1 ? 2 : 1;
    const int pi2 = pl == 0 ? 2 : pl == 1 ? 3 : 3;
    RVec tr(4);
    for (int i = 0; i < 4; ++i) tr(i) = rng.uniform(-1.0, 1.0);
    return compose(
        CoverElement4::pure(CMat(boost_lift(axis, rng.uniform(-1.0, 1.0)) *
                                 rotation_lift(pi1, pi2,
                                               rng.uniform(-3.0, 3.0)))),
        CoverElement4::translation(tr));
  };
  double hom = 0.0, alpha_inv = 0.0, alpha_cov = 0.0, ext = 0.0;
  const RMat refl1 = wedge_reflection(4, 1);
  for (int it = 0; it < 12; ++it) {
    const CoverElement4 x = random_cover();
    const CoverElement4 y = random_cover();
    const auto [lx, tx] = covering_poincare(x);
    const auto [ly, ty] = covering_poincare(y);
    const auto [lxy, txy] = covering_poincare(compose(x, y));
    hom = std::max(hom, (lxy - lx * ly).cwiseAbs().maxCoeff());
    hom = std::max(hom, (txy - (tx + lx * ty)).cwiseAbs().maxCoeff());

    const CoverElement4 axx = alpha_cover4(alpha_cover4(x));
    alpha_inv = std::max(alpha_inv, (axx.a - x.a).cwiseAbs().maxCoeff());
    alpha_inv =
        std::max(alpha_inv, (axx.trans - x.trans).cwiseAbs().maxCoeff());
    const auto [la, ta] = covering_poincare(alpha_cover4(x));
    alpha_cov =
        std::max(alpha_cov, (la - refl1 * lx * refl1).cwiseAbs().maxCoeff());
    alpha_cov = std::max(alpha_cov, (ta - refl1 * tx).cwiseAbs().maxCoeff());

    const ProperCover4 px{x, it % 2};
    const ProperCover4 py{y, (it / 2) % 2};
    const auto [lp, tp] = covering_poincare(compose(px, py));
    const auto [l1, t1] = covering_poincare(px);
    const auto [l2, t2] = covering_poincare(py);
    ext = std::max(ext, (lp - l1 * l2).cwiseAbs().maxCoeff());
    ext = std::max(ext, (tp - (t1 + l1 * t2)).cwiseAbs().maxCoeff());
  }
  r.add("cover4-homomorphism", "Eq. (2.8)", "words=12", hom);
  r.add("cover4-alpha-involution", "Eq. (2.8)", "words=12", alpha_inv);
  r.add("cover4-alpha-covering", "Eq. (2.8)", "words=12", alpha_cov);
  r.add("cover4-extension-homomorphism", "Eq. (2.8)", "words=12", ext);
  {
    const CMat full_turn = rotation_lift(1, 2, 2.0 * kPi);
    const double lift_dev =
        (full_turn + CMat::Identity(2, 2)).cwiseAbs().maxCoeff();
    const double cover_dev =
        (covering_matrix4(full_turn) - RMat::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff();
    r.add("cover4-two-pi", "Eq. (2.8)", "theta=2pi",
          std::max(lift_dev, cover_dev));
  }

  // d = 3 covering words.
  const auto random_word3 = [&rng]() {
    CoverWord3 w;
    const int len = 2 + rng.index(3);
    for (int i = 0; i < len; ++i) {
      const int kind = rng.index(3);
      const double p = rng.uniform(-2.0, 2.0);
      w = compose(w, kind == 0   ? word3_boost1(p)
                     : kind == 1 ? word3_boost2(p)
                                 : word3_rotation(p));
    }
    return w;
  };
  double hom3 = 0.0, alpha3 = 0.0, inv3 = 0.0;
  const RMat refl13 = wedge_reflection(3, 1);
  for (int it = 0; it < 12; ++it) {
    const CoverWord3 x = random_word3();
    const CoverWord3 y = random_word3();
    // The boost entries grow like cosh(2 pi param) and the two evaluation
    // orders cancel differently, so the deviation is scaled by the product
    // of the factor magnitudes (the forward-error bound for the product).
    const RMat cx = covering_matrix3(x), cy = covering_matrix3(y);
    const double scale = std::max(
        1.0, cx.cwiseAbs().maxCoeff() * cy.cwiseAbs().maxCoeff());
    hom3 = std::max(hom3, (covering_matrix3(compose(x, y)) - cx * cy)
                              .cwiseAbs()
                              .maxCoeff() /
                              scale);
    const RMat conj = refl13 * covering_matrix3(x) * refl13;
    alpha3 = std::max(alpha3,
                      (covering_matrix3(alpha_word3(x)) - conj)
                              .cwiseAbs()
                              .maxCoeff() /
                          std::max(1.0, conj.cwiseAbs().maxCoeff()));
    inv3 = std::max(
        inv3, static_cast<double>(compose(x, inverse(x)).tokens.size()));
  }
  r.add("cover3-homomorphism", "Eq. (2.8)", "words=12", hom3);
  r.add("cover3-alpha-covering", "Eq. (2.8)", "words=12", alpha3);
  r.add("cover3-inverse", "Eq. (2.8)", "words=12", inv3);
  const bool twopi_trivial =
      word3_equal(word3_rotation(2.0 * kPi), CoverWord3{});
  r.add("cover3-two-pi-nontrivial", "Eq. (2.8)", "theta=2pi",
        twopi_trivial ? 1.0 : 0.0);
}

using SuiteFn = void (*)(SuiteRun&, const SuiteConfig&, Rng&);

struct SuiteEntry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<SuiteEntry>& suite_table() {
  static const std::vector<SuiteEntry> table = {
      {{"property_ii",
        "finite-dimensional commutation identity between the two modular "
        "one-parameter groups",
        {"Thm 1.1 (ii)"},
        1e-8},
       suite_property_ii},
      {{"standard_subspace",
        "randomized standard-subspace modular laws (J, Delta, symplectic "
        "complement)",
        {"Tomita–Takesaki", "Prop 2.5"},
        1e-8},
       suite_standard_subspace},
      {{"tomita_finite",
        "finite von Neumann algebras: modular theorem, KMS boundary, central "
        "decomposition",
        {"Tomita–Takesaki", "KMS condition", "Prop 3.1"},
        1e-8},
       suite_tomita_finite},
      {{"quasifree",
        "quasi-free modular spectra: GNS brute force vs closed-form "
        "log-spectrum",
        {"Lemma 3.4", "Tomita–Takesaki"},
        1e-8},
       suite_quasifree},
      {{"twist",
        "twist operator algebra, graded conjugation laws, twisted locality "
        "bridge",
        {"Eq. (2.1)", "Eq. (2.3)", "Lemma 2.2", "Prop 2.1"},
        1e-12},
       suite_twist},
      {{"identity_chains",
        "one-particle wedge operator identities by word reduction and "
        "pointwise sampling",
        {"Cor 2.7", "Eq. (2.5)", "Eq. (2.9)", "Thm 2.11", "Thm 3.2(c)",
         "Lemma 2.2"},
        1e-10},
       suite_identity_chains},
      {{"spin_statistics",
        "rotation sign vs braid sign vs sector statistics phases",
        {"Thm 2.11", "Thm 3.3"},
        0.0},
       suite_spin_statistics},
      {{"wedge_geometry",
        "wedge/cone geometry, duality region reflection, covering-group "
        "arithmetic",
        {"Eq. (2.10)", "Prop 2.6", "Eq. (2.8)"},
        1e-8},
       suite_wedge_geometry},
  };
  return table;
}

}  // namespace

// ------------------------------------------------------- registry & config --

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> reg = [] {
    std::vector<SuiteInfo> out;
    for (const SuiteEntry& e : suite_table()) out.push_back(e.info);
    return out;
  }();
  return reg;
}

std::string canonical_suite_name(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

bool is_suite_name(const std::string& name) {
  const std::string c = canonical_suite_name(name);
  for (const SuiteInfo& info : suite_registry())
    if (info.name == c) return true;
  return false;
}

double SuiteConfig::tol_for(const std::string& suite) const {
  if (tol_cli) return *tol_cli;
  const auto it = suite_tol.find(canonical_suite_name(suite));
  if (it != suite_tol.end()) return it->second;
  if (tol_cfg) return *tol_cfg;
  for (const SuiteInfo& info : suite_registry())
    if (info.name == canonical_suite_name(suite)) return info.default_tol;
  raise(ErrorCode::ConfigError, "unknown suite: " + suite);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    require(pos == v.size(), ErrorCode::ConfigError, "");
    return out;
  } catch (...) {
    raise(ErrorCode::ConfigError, "bad numeric value for '" + key + "': " + v);
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long out = std::stoll(v, &pos);
    require(pos == v.size(), ErrorCode::ConfigError, "");
    return out;
  } catch (...) {
    raise(ErrorCode::ConfigError, "bad integer value for '" + key + "': " + v);
  }
}

void parse_dims(const std::string& v, int& lo, int& hi) {
  const auto dots = v.find("..");
  if (dots == std::string::npos) {
    lo = hi = static_cast<int>(parse_int("dims", v));
    return;
  }
  lo = static_cast<int>(parse_int("dims", trim(v.substr(0, dots))));
  hi = static_cast<int>(parse_int("dims", trim(v.substr(dots + 2))));
}

}  // namespace

void apply_config_file(SuiteConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ConfigError,
          "cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::ConfigError,
            "config line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "suite") {
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ','))
        cfg.suites.push_back(canonical_suite_name(trim(tok)));
    } else if (key == "seed") {
      try {
        cfg.seed = std::stoull(value);
      } catch (...) {
        raise(ErrorCode::ConfigError, "bad seed value: " + value);
      }
    } else if (key == "tol") {
      cfg.tol_cfg = parse_double(key, value);
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string suite = canonical_suite_name(key.substr(4));
      require(is_suite_name(suite), ErrorCode::ConfigError,
              "unknown suite in config key: " + key);
      cfg.suite_tol[suite] = parse_double(key, value);
    } else if (key == "dims") {
      parse_dims(value, cfg.dims_lo, cfg.dims_hi);
    } else if (key == "modes") {
      cfg.modes = static_cast<int>(parse_int(key, value));
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(parse_int(key, value));
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "format") {
      cfg.format = value;
    } else {
      raise(ErrorCode::ConfigError, "unknown config key: " + key);
    }
  }
}

void validate_config(const SuiteConfig& cfg) {
  for (const std::string& s : cfg.suites) {
    if (canonical_suite_name(s) == "all") continue;
    require(is_suite_name(s), ErrorCode::ConfigError, "unknown suite: " + s);
  }
  require(cfg.dims_lo >= 2 && cfg.dims_lo <= cfg.dims_hi && cfg.dims_hi <= 12,
          ErrorCode::ConfigError, "dims must satisfy 2 <= lo <= hi <= 12");
  require(cfg.modes >= 1 && cfg.modes <= 4, ErrorCode::ConfigError,
          "modes must lie in [1, 4]");
  require(cfg.samples >= 0 && cfg.samples <= 1000000, ErrorCode::ConfigError,
          "samples must lie in [0, 1000000]");
  require(cfg.format == "json" || cfg.format == "csv", ErrorCode::ConfigError,
          "format must be json or csv");
  for (const auto& [suite, tol] : cfg.suite_tol) {
    require(is_suite_name(suite), ErrorCode::ConfigError,
            "unknown suite in tol override: " + suite);
    require(tol >= 0.0, ErrorCode::ConfigError, "tolerances must be >= 0");
  }
  if (cfg.tol_cli)
    require(*cfg.tol_cli >= 0.0, ErrorCode::ConfigError,
            "tolerances must be >= 0");
  if (cfg.tol_cfg)
    require(*cfg.tol_cfg >= 0.0, ErrorCode::ConfigError,
            "tolerances must be >= 0");
}

// ---------------------------------------------------------------- running --

std::vector<CheckRecord> run_suite(const std::string& name,
                                   const SuiteConfig& cfg) {
  const std::string canon = canonical_suite_name(name);
  for (const SuiteEntry& entry : suite_table()) {
    if (entry.info.name != canon) continue;
    SuiteRun run(canon, cfg.tol_for(canon));
    Rng rng(derive_seed(cfg.seed, canon));
    entry.fn(run, cfg, rng);
    return std::move(run.records);
  }
  raise(ErrorCode::ConfigError, "unknown suite: " + name);
}

std::vector<CheckRecord> run_selected(const SuiteConfig& cfg) {
  std::set<std::string> wanted;
  bool all = cfg.suites.empty();
  for (const std::string& s : cfg.suites) {
    const std::string c = canonical_suite_name(s);
    if (c == "all")
      all = true;
    else
      wanted.insert(c);
  }
  std::vector<CheckRecord> out;
  for (const SuiteEntry& entry : suite_table()) {
    if (!all && wanted.find(entry.info.name) == wanted.end()) continue;
    try {
      std::vector<CheckRecord> recs = run_suite(entry.info.name, cfg);
      out.insert(out.end(), std::make_move_iterator(recs.begin()),
                 std::make_move_iterator(recs.end()));
    } catch (const std::exception& e) {
      // A crashing suite is a failed record, never an aborted campaign.
      out.push_back({entry.info.name, "suite-exception",
                     entry.info.anchors.front(), e.what(), 1e300,
                     cfg.tol_for(entry.info.name), false, 0.0});
    }
  }
  return out;
}

// -------------------------------------------------------------- reporting --

std::string current_timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_json(const std::vector<CheckRecord>& records,
                        const SuiteConfig& cfg, const std::string& started_at) {
  require(!records.empty(), ErrorCode::ConfigError,
          "refusing to emit a report with no records");
  nlohmann::ordered_json root;
  root["meta"] = {{"seed", cfg.seed},
                  {"version", kReportVersion},
                  {"started_at", started_at}};
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  int passed = 0;
  for (const CheckRecord& rec : records) {
    recs.push_back({{"suite", rec.suite},
                    {"check_id", rec.check_id},
                    {"paper_anchor", rec.paper_anchor},
                    {"parameters", rec.parameters},
                    {"residual", rec.residual},
                    {"tol", rec.tol},
                    {"pass", rec.pass},
                    {"wall_time_ms", rec.wall_time_ms}});
    if (rec.pass) ++passed;
  }
  root["records"] = std::move(recs);
  root["summary"] = {{"total", records.size()},
                     {"passed", passed},
                     {"failed", records.size() - passed}};
  return root.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string report_csv(const std::vector<CheckRecord>& records) {
  require(!records.empty(), ErrorCode::ConfigError,
          "refusing to emit a report with no records");
  std::string out =
      "suite,check_id,paper_anchor,parameters,residual,tol,pass,wall_time_ms\n";
  for (const CheckRecord& rec : records) {
    out += csv_escape(rec.suite) + "," + csv_escape(rec.check_id) + "," +
           csv_escape(rec.paper_anchor) + "," + csv_escape(rec.parameters) +
           "," + fmt_full(rec.residual) + "," + fmt_full(rec.tol) + "," +
           (rec.pass ? "true" : "false") + "," + fmt_full(rec.wall_time_ms) +
           "\n";
  }
  return out;
}

std::vector<CheckRecord> parse_csv(const std::string& text) {
  // Split into rows of fields, honouring quoted fields.
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      field.clear();
      if (!(fields.size() == 1 && fields[0].empty()))
        rows.push_back(std::move(fields));
      fields.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !fields.empty()) {
    fields.push_back(std::move(field));
    rows.push_back(std::move(fields));
  }
  require(!rows.empty(), ErrorCode::IoError, "empty csv document");
  require(rows.front().size() == 8 && rows.front()[0] == "suite",
          ErrorCode::IoError, "unexpected csv header");
  std::vector<CheckRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    require(row.size() == 8, ErrorCode::IoError,
            "csv row " + std::to_string(i) + " has " +
                std::to_string(row.size()) + " fields");
    CheckRecord rec;
    rec.suite = row[0];
    rec.check_id = row[1];
    rec.paper_anchor = row[2];
    rec.parameters = row[3];
    rec.residual = std::strtod(row[4].c_str(), nullptr);
    rec.tol = std::strtod(row[5].c_str(), nullptr);
    rec.pass = row[6] == "true";
    rec.wall_time_ms = std::strtod(row[7].c_str(), nullptr);
    out.push_back(std::move(rec));
  }
  return out;
}

void write_report_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::IoError, "cannot open for writing: " + path);
  out << content;
  out.flush();
  require(out.good(), ErrorCode::IoError, "failed writing report: " + path);
}

// -------------------------------------------------------------------- cli --

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"verification workbench over the operator-algebraic modules"};
  app.name("verify");
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run suites and emit a report");
  std::vector<std::string> suite_names;
  run->add_option("--suite", suite_names,
                  "suite to run (repeatable; 'all' selects every suite)");
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = run->add_option("--seed", seed, "master seed");
  double tol = 0.0;
  CLI::Option* tol_opt =
      run->add_option("--tol", tol, "tolerance override for every suite");
  std::string dims;
  CLI::Option* dims_opt = run->add_option(
      "--dims", dims, "dimension range lo..hi (or a single value)");
  int modes = 0;
  CLI::Option* modes_opt =
      run->add_option("--modes", modes, "quasi-free mode cap, 1..4");
  int samples = 0;
  CLI::Option* samples_opt = run->add_option(
      "--samples", samples, "per-suite sample count (0 = suite default)");
  std::string out_path;
  CLI::Option* out_opt = run->add_option(
      "--out", out_path, "write the report to this path instead of stdout");
  std::string format;
  CLI::Option* format_opt =
      run->add_option("--format", format, "report format: json or csv");
  std::string config_path;
  CLI::Option* config_opt =
      run->add_option("--config", config_path, "key=value config file");

  CLI::App* list = app.add_subcommand(
      "list", "list suites with their anchors and default tolerances");

  std::vector<const char*> argv;
  argv.push_back("verify");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ConfigError: " << e.what() << "\n";
    return 2;
  }

  if (list->parsed()) {
    for (const SuiteInfo& info : suite_registry()) {
      out << info.name << "  (default tol " << fmt_g(info.default_tol)
          << ")\n    " << info.description << "\n    anchors:";
      for (const std::string& a : info.anchors) out << " [" << a << "]";
      out << "\n";
    }
    return 0;
  }

  SuiteConfig cfg;
  try {
    if (config_opt->count() > 0) apply_config_file(cfg, config_path);
    if (!suite_names.empty()) {
      cfg.suites.clear();
      for (const std::string& s : suite_names)
        cfg.suites.push_back(canonical_suite_name(s));
    }
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (tol_opt->count() > 0) cfg.tol_cli = tol;
    if (dims_opt->count() > 0) parse_dims(dims, cfg.dims_lo, cfg.dims_hi);
    if (modes_opt->count() > 0) cfg.modes = modes;
    if (samples_opt->count() > 0) cfg.samples = samples;
    if (out_opt->count() > 0) cfg.out_path = out_path;
    if (format_opt->count() > 0) cfg.format = format;
    validate_config(cfg);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }

  const std::string started_at = current_timestamp_utc();
  const std::vector<CheckRecord> records = run_selected(cfg);
  const std::string report = cfg.format == "csv"
                                 ? report_csv(records)
                                 : report_json(records, cfg, started_at);
  if (cfg.out_path.empty()) {
    out << report;
  } else {
    try {
      write_report_file(cfg.out_path, report);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return 2;
    }
  }
  int failed = 0;
  for (const CheckRecord& rec : records)
    if (!rec.pass) ++failed;
  err << "checks: " << records.size() << " total, "
      << (records.size() - failed) << " passed, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace wb
