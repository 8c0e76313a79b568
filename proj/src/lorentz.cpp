#include "wb/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace wb {

namespace {

void check_dim(int d) {
  require(d == 3 || d == 4, ErrorCode::BadDimension, "spacetime dimension must be 3 or 4");
}

void check_axis(int d, int axis) {
  require(axis >= 1 && axis <= d - 1, ErrorCode::BadAxis, "spatial axis out of range");
}

}  // namespace

RMat minkowski_eta(int d) {
  check_dim(d);
  RMat eta = -RMat::Identity(d, d);
  eta(0, 0) = 1.0;
  return eta;
}

double minkowski_dot(const RVec& x, const RVec& y) {
  require(x.size() == y.size(), ErrorCode::DimensionMismatch, "vectors differ in size");
  double acc = x(0) * y(0);
  for (int i = 1; i < x.size(); ++i) acc -= x(i) * y(i);
  return acc;
}

bool is_lorentz(const RMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const RMat eta = minkowski_eta(static_cast<int>(m.rows()));
  return (m.transpose() * eta * m - eta).norm() <= tol * std::max(1.0, eta.norm());
}

bool is_orthochronous(const RMat& m) { return m(0, 0) > 0.0; }

bool is_proper(const RMat& m) { return m.determinant() > 0.0; }

RMat boost_matrix(int d, int axis, double t) {
  check_dim(d);
  check_axis(d, axis);
  RMat m = RMat::Identity(d, d);
  const double ch = std::cosh(2.0 * M_PI * t), sh = std::sinh(2.0 * M_PI * t);
  m(0, 0) = ch;
  m(0, axis) = -sh;
  m(axis, 0) = -sh;
  m(axis, axis) = ch;
  return m;
}

RMat rotation_matrix(int d, int i, int j, double theta) {
  check_dim(d);
  check_axis(d, i);
  check_axis(d, j);
  require(i != j, ErrorCode::BadPlane, "rotation plane needs two distinct axes");
  RMat m = RMat::Identity(d, d);
  m(i, i) = std::cos(theta);
  m(j, j) = std::cos(theta);
  m(j, i) = std::sin(theta);
  m(i, j) = -std::sin(theta);
  return m;
}

RMat wedge_reflection(int d, int axis) {
  check_dim(d);
  check_axis(d, axis);
  RMat m = RMat::Identity(d, d);
  m(0, 0) = -1.0;
  m(axis, axis) = -1.0;
  return m;
}

// ---------------------------------------------------------------- wedges --

Wedge standard_wedge(int d) {
  check_dim(d);
  return {RMat::Identity(d, d), RVec::Zero(d)};
}

Wedge axis_wedge(int d, int axis) {
  check_dim(d);
  check_axis(d, axis);
  if (axis == 1) return standard_wedge(d);
  return {rotation_matrix(d, 1, axis, M_PI / 2.0), RVec::Zero(d)};
}

Wedge transform_wedge(const RMat& lambda, const RVec& a, const Wedge& w) {
  require(is_lorentz(lambda), ErrorCode::BadDimension, "not a Lorentz matrix");
  require(is_proper(lambda) && is_orthochronous(lambda), ErrorCode::BadDimension,
          "wedges move under the proper orthochronous group");
  return {lambda * w.lambda, lambda * w.a + a};
}

bool wedge_contains(const Wedge& w, const RVec& x) {
  const RVec y = w.lambda.inverse() * (x - w.a);
  return y(1) > std::abs(y(0));
}

Wedge wedge_complement(const Wedge& w) {
  const int d = w.dim();
  return {w.lambda * rotation_matrix(d, 1, 2, M_PI), w.a};
}

Wedge wedge_negate(const Wedge& w) {
  const int d = w.dim();
  return {w.lambda * rotation_matrix(d, 1, 2, M_PI), RVec(-w.a)};
}

WedgeCanonical wedge_canonical(const Wedge& w) {
  const int d = w.dim();
  const RMat inv = w.lambda.inverse();
  WedgeCanonical out;
  bool have_minus = false, have_plus = false;
  for (int s : {-1, +1}) {
    // Base functional on W1: f(y) = y1 - s * y0.
    RVec ell = RVec::Zero(d);
    ell(0) = -static_cast<double>(s);
    ell(1) = 1.0;
    RVec c = inv.transpose() * ell;
    const double spatial = c.tail(d - 1).norm();
    require(spatial > 0.0, ErrorCode::MalformedRegion, "degenerate wedge functional");
    c /= spatial;
    const double beta = -c.dot(w.a);
    if (c(0) < 0.0) {
      out.cov_minus = c;
      out.beta_minus = beta;
      have_minus = true;
    } else {
      out.cov_plus = c;
      out.beta_plus = beta;
      have_plus = true;
    }
  }
  require(have_minus && have_plus, ErrorCode::MalformedRegion,
          "wedge functionals do not split by time orientation");
  return out;
}

double wedge_deviation(const Wedge& u, const Wedge& v) {
  require(u.dim() == v.dim(), ErrorCode::DimensionMismatch, "wedges in different dimensions");
  const WedgeCanonical cu = wedge_canonical(u), cv = wedge_canonical(v);
  double dev = (cu.cov_minus - cv.cov_minus).cwiseAbs().maxCoeff();
  dev = std::max(dev, (cu.cov_plus - cv.cov_plus).cwiseAbs().maxCoeff());
  dev = std::max(dev, std::abs(cu.beta_minus - cv.beta_minus));
  dev = std::max(dev, std::abs(cu.beta_plus - cv.beta_plus));
  return dev;
}

bool wedge_equal(const Wedge& u, const Wedge& v, double tol) {
  return wedge_deviation(u, v) <= tol;
}

// ----------------------------------------------------- cones and duality --

bool cone_contains(const DoubleCone& o, const RVec& x) {
  const int d = static_cast<int>(o.center.size());
  const RVec delta = x - o.center;
  return std::abs(delta(0)) + delta.tail(d - 1).norm() < o.radius;
}

bool wedge_contains_cone(const Wedge& w, const DoubleCone& o, double tol) {
  require(w.dim() == o.center.size(), ErrorCode::DimensionMismatch,
          "wedge and cone in different dimensions");
  require(o.radius > 0.0, ErrorCode::MalformedRegion, "cone radius must be positive");
  const WedgeCanonical c = wedge_canonical(w);
  // Normalized functionals have max(|c0|, ||cvec||) = 1, so the inf of g
  // over the cone is g(center) - r exactly.
  const double gm = c.cov_minus.dot(o.center) + c.beta_minus;
  const double gp = c.cov_plus.dot(o.center) + c.beta_plus;
  return gm >= o.radius - tol && gp >= o.radius - tol;
}

std::vector<Wedge> dual_region(int d, const DoubleCone& o) {
  check_dim(d);
  require(o.center.size() == d, ErrorCode::DimensionMismatch, "cone has wrong dimension");
  require(o.radius > 0.0, ErrorCode::MalformedRegion, "cone radius must be positive");
  std::vector<Wedge> wedges;
  for (int axis = 1; axis <= d - 1; ++axis) {
    for (int s : {+1, -1}) {
      RMat rot;
      if (s > 0) {
        rot = axis == 1 ? RMat(RMat::Identity(d, d))
                        : rotation_matrix(d, 1, axis, M_PI / 2.0);
      } else {
        rot = axis == 1 ? rotation_matrix(d, 1, 2, M_PI)
                        : rotation_matrix(d, 1, axis, -M_PI / 2.0);
      }
      RVec a = o.center;
      a(axis) -= s * o.radius;
      wedges.push_back(Wedge{rot, a});
    }
  }
  return wedges;
}

double dual_region_reflection_deviation(int d, const DoubleCone& o) {
  const DoubleCone neg{RVec(-o.center), o.radius};
  const std::vector<Wedge> lhs = dual_region(d, o);
  const std::vector<Wedge> rhs = dual_region(d, neg);
  double worst = 0.0;
  for (const Wedge& w : lhs) {
    const Wedge image = wedge_negate(w);
    double best = 1e300;
    for (const Wedge& cand : rhs) best = std::min(best, wedge_deviation(image, cand));
    worst = std::max(worst, best);
  }
  return worst;
}

ConeSampleReport cone_membership_check(int d, double t, int samples, Rng& rng) {
  check_dim(d);
  require(samples > 0, ErrorCode::ConfigError, "sample count must be positive");
  ConeSampleReport rep;
  const double shrink = std::sqrt(2.0) * std::cosh(2.0 * M_PI * t);
  const double boosts[] = {-t, -0.5 * t, 0.5 * t, t};
  std::vector<RMat> boost_mats;
  for (double s : boosts) boost_mats.push_back(boost_matrix(d, 2, s));
  for (int i = 0; i < samples; ++i) {
    RVec x = RVec::Zero(d);
    x(1) = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const double rho = rng.uniform01() * x(1) / shrink;
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    x(0) = rho * std::cos(phi);
    x(2) = rho * std::sin(phi);
    if (d == 4) x(3) = rng.uniform(-5.0, 5.0);
    rep.min_margin_unboosted = std::min(rep.min_margin_unboosted, x(1) - std::abs(x(0)));
    for (const RMat& b : boost_mats) {
      const RVec y = b * x;
      rep.min_margin_boosted = std::min(rep.min_margin_boosted, y(1) - std::abs(y(0)));
    }
    ++rep.samples;
  }
  return rep;
}

// ------------------------------------------------------------ d = 4 cover --

CMat pauli(int k) {
  CMat s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: raise(ErrorCode::BadAxis, "pauli index out of range");
  }
  return s;
}

RMat covering_matrix4(const CMat& a) {
  require(a.rows() == 2 && a.cols() == 2, ErrorCode::DimensionMismatch,
          "cover element must be 2x2");
  require(std::abs(a.determinant() - 1.0) < 1e-9, ErrorCode::MalformedWord,
          "cover element must have determinant one");
  RMat lam(4, 4);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      lam(mu, nu) = 0.5 * (pauli(mu) * a * pauli(nu) * a.adjoint()).trace().real();
  return lam;
}

CMat boost_lift(int axis, double rapidity) {
  check_axis(4, axis);
  return std::cosh(rapidity / 2.0) * pauli(0) + std::sinh(rapidity / 2.0) * pauli(axis);
}

CMat wedge_boost_lift(int axis, double t) { return boost_lift(axis, -2.0 * M_PI * t); }

CMat rotation_lift(int i, int j, double theta) {
  check_axis(4, i);
  check_axis(4, j);
  require(i != j, ErrorCode::BadPlane, "rotation plane needs two distinct axes");
  if (i > j) return rotation_lift(j, i, -theta);
  // (i, j, k) cyclic: (1,2)->3, (2,3)->1; (1,3) is (3,1) reversed.
  int k;
  double sign = 1.0;
  if (i == 1 && j == 2) k = 3;
  else if (i == 2 && j == 3) k = 1;
  else { k = 2; sign = -1.0; }  // (1,3): axis 2 with opposite orientation
  const double half = sign * theta / 2.0;
  return std::cos(half) * pauli(0) - cxd(0, 1) * std::sin(half) * pauli(k);
}

CoverElement4 CoverElement4::identity() {
  return {CMat(CMat::Identity(2, 2)), RVec(RVec::Zero(4))};
}

CoverElement4 CoverElement4::pure(const CMat& a) {
  return {a, RVec(RVec::Zero(4))};
}

CoverElement4 CoverElement4::translation(const RVec& t) {
  require(t.size() == 4, ErrorCode::DimensionMismatch, "translation must be 4-dim");
  return {CMat(CMat::Identity(2, 2)), t};
}

CoverElement4 compose(const CoverElement4& x, const CoverElement4& y) {
  return {CMat(x.a * y.a), RVec(x.trans + covering_matrix4(x.a) * y.trans)};
}

CoverElement4 inverse(const CoverElement4& x) {
  const CMat ainv = x.a.inverse();
  return {ainv, RVec(-(covering_matrix4(ainv) * x.trans))};
}

std::pair<RMat, RVec> covering_poincare(const CoverElement4& x) {
  return {covering_matrix4(x.a), x.trans};
}

CoverElement4 alpha_cover4(const CoverElement4& x) {
  return {CMat(pauli(1) * x.a * pauli(1)), RVec(wedge_reflection(4, 1) * x.trans)};
}

ProperCover4 compose(const ProperCover4& x, const ProperCover4& y) {
  const CoverElement4 adj = (x.refl & 1) ? alpha_cover4(y.g) : y.g;
  return {compose(x.g, adj), (x.refl + y.refl) & 1};
}

std::pair<RMat, RVec> covering_poincare(const ProperCover4& x) {
  auto [lam, tr] = covering_poincare(x.g);
  if (x.refl & 1) lam = lam * wedge_reflection(4, 1);
  return {lam, tr};
}

// ------------------------------------------------------------ d = 3 cover --

CoverWord3 word3_boost1(double t) { return {{{CoverToken::Kind::Boost1, t}}}; }
CoverWord3 word3_boost2(double t) { return {{{CoverToken::Kind::Boost2, t}}}; }
CoverWord3 word3_rotation(double theta) { return {{{CoverToken::Kind::Rotation, theta}}}; }

CoverWord3 reduce_word3(const CoverWord3& w) {
  CoverWord3 out;
  for (const CoverToken& tok : w.tokens) {
    if (!out.tokens.empty() && out.tokens.back().kind == tok.kind) {
      out.tokens.back().param += tok.param;
      if (out.tokens.back().param == 0.0) out.tokens.pop_back();
    } else if (tok.param != 0.0) {
      out.tokens.push_back(tok);
    }
  }
  // Merging can create fresh adjacencies; iterate to a fixed point.
  if (out.tokens.size() < w.tokens.size()) return reduce_word3(out);
  return out;
}

CoverWord3 compose(const CoverWord3& x, const CoverWord3& y) {
  CoverWord3 joined = x;
  joined.tokens.insert(joined.tokens.end(), y.tokens.begin(), y.tokens.end());
  return reduce_word3(joined);
}

CoverWord3 inverse(const CoverWord3& x) {
  CoverWord3 out;
  for (auto it = x.tokens.rbegin(); it != x.tokens.rend(); ++it)
    out.tokens.push_back({it->kind, -it->param});
  return reduce_word3(out);
}

bool word3_equal(const CoverWord3& x, const CoverWord3& y, double tol) {
  const CoverWord3 rx = reduce_word3(x), ry = reduce_word3(y);
  if (rx.tokens.size() != ry.tokens.size()) return false;
  for (std::size_t i = 0; i < rx.tokens.size(); ++i) {
    if (rx.tokens[i].kind != ry.tokens[i].kind) return false;
    if (std::abs(rx.tokens[i].param - ry.tokens[i].param) > tol) return false;
  }
  return true;
}

RMat covering_matrix3(const CoverWord3& w) {
  RMat m = RMat::Identity(3, 3);
  for (const CoverToken& tok : w.tokens) {
    switch (tok.kind) {
      case CoverToken::Kind::Boost1:   m = m * boost_matrix(3, 1, tok.param); break;
      case CoverToken::Kind::Boost2:   m = m * boost_matrix(3, 2, tok.param); break;
      case CoverToken::Kind::Rotation: m = m * rotation_matrix(3, 1, 2, tok.param); break;
    }
  }
  return m;
}

CoverWord3 alpha_word3(const CoverWord3& w) {
  CoverWord3 out;
  for (const CoverToken& tok : w.tokens) {
    switch (tok.kind) {
      case CoverToken::Kind::Boost1:
        out.tokens.push_back({tok.kind, tok.param});
        break;
      case CoverToken::Kind::Boost2:
      case CoverToken::Kind::Rotation:
        out.tokens.push_back({tok.kind, -tok.param});
        break;
    }
  }
  return reduce_word3(out);
}

ProperCover3 compose(const ProperCover3& x, const ProperCover3& y) {
  const CoverWord3 adj = (x.refl & 1) ? alpha_word3(y.g) : y.g;
  return {compose(x.g, adj), (x.refl + y.refl) & 1};
}

RMat covering_matrix3(const ProperCover3& x) {
  RMat m = covering_matrix3(x.g);
  if (x.refl & 1) m = m * wedge_reflection(3, 1);
  return m;
}

}  // namespace wb
