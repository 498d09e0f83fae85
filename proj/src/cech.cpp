#include "diffalg/cech.hpp"

#include <cmath>
#include <random>

#include "diffalg/errors.hpp"
#include "diffalg/frac.hpp"
#include "diffalg/util.hpp"

namespace diffalg {

Cochain::Cochain(TowerPtr tower, std::size_t degree, SheafKind kind,
                 RingElem value)
    : tower_(std::move(tower)), degree_(degree), kind_(kind),
      scalar_(std::move(value)) {
  if (kind_ == SheafKind::ProjectiveLinear)
    fail("ShapeMismatch", "matrix cochains take a matrix value");
  if (degree_ > 2) fail("UnsupportedTower", "cochain degree exceeds 2");
  if (scalar_.ring().get() != tower_->level(degree_ + 1).get())
    fail("RingMismatch", "cochain value lives on the wrong amalgam level");
  if (kind_ != SheafKind::Additive) {
    if (!scalar_.inverse())
      fail("NotAUnit", "unit-valued cochain value is not a unit");
    if (kind_ == SheafKind::ConstantUnits && !scalar_.d().is_zero())
      fail("DeclarationError",
           "constant-unit cochain value is not differentially constant");
  }
}

Cochain::Cochain(TowerPtr tower, std::size_t degree, Mat value)
    : tower_(std::move(tower)), degree_(degree),
      kind_(SheafKind::ProjectiveLinear), matrix_(std::move(value)) {
  if (degree_ > 2) fail("UnsupportedTower", "cochain degree exceeds 2");
  if (matrix_.ring().get() != tower_->level(degree_ + 1).get())
    fail("RingMismatch", "cochain value lives on the wrong amalgam level");
  if (!matrix_.det().inverse())
    fail("NotInvertible", "matrix cochain value is not invertible");
}

const RingElem& Cochain::scalar() const {
  if (kind_ == SheafKind::ProjectiveLinear)
    fail("ShapeMismatch", "matrix cochain has no scalar value");
  return scalar_;
}

const Mat& Cochain::matrix() const {
  if (kind_ != SheafKind::ProjectiveLinear)
    fail("ShapeMismatch", "scalar cochain has no matrix value");
  return matrix_;
}

bool Cochain::is_identity() const {
  switch (kind_) {
    case SheafKind::Additive:
      return scalar_.is_zero();
    case SheafKind::Units:
    case SheafKind::ConstantUnits:
      return scalar_ == scalar_.ring()->one();
    case SheafKind::ProjectiveLinear: {
      auto s = matrix_.as_scalar();
      return s.has_value() && s->inverse().has_value();
    }
  }
  return false;
}

Cochain cech_d(const Cochain& c) {
  const TowerPtr& tw = c.tower();
  std::size_t m = c.degree();
  if (m > 1)
    fail("UnsupportedTower", "differential of a degree-2 cochain exceeds "
                             "the amalgam cap");
  std::size_t lvl = m + 1;  // cofaces B^{⊗lvl} → B^{⊗lvl+1}
  if (c.kind() == SheafKind::ProjectiveLinear) {
    Mat v = c.matrix();
    if (m == 0) {
      Mat out = v.map(tw->coface(1, 0)) * *v.map(tw->coface(1, 1)).inverse();
      return Cochain(tw, 1, std::move(out));
    }
    Mat out = v.map(tw->coface(2, 0)) * v.map(tw->coface(2, 2)) *
              *v.map(tw->coface(2, 1)).inverse();
    return Cochain(tw, 2, std::move(out));
  }
  const RingElem& v = c.scalar();
  if (c.kind() == SheafKind::Additive) {
    RingElem out =
        m == 0 ? tw->coface(1, 0).apply(v) - tw->coface(1, 1).apply(v)
               : tw->coface(2, 0).apply(v) - tw->coface(2, 1).apply(v) +
                     tw->coface(2, 2).apply(v);
    return Cochain(tw, m + 1, SheafKind::Additive, std::move(out));
  }
  RingElem out;
  if (m == 0) {
    out = tw->coface(1, 0).apply(v) * *tw->coface(1, 1).apply(v).inverse();
  } else {
    out = tw->coface(2, 0).apply(v) * tw->coface(2, 2).apply(v) *
          *tw->coface(2, 1).apply(v).inverse();
  }
  return Cochain(tw, m + 1, c.kind(), std::move(out));
}

bool is_cocycle(const Cochain& c) { return cech_d(c).is_identity(); }

bool is_coboundary(const Cochain& c, const Cochain& candidate) {
  if (candidate.degree() + 1 != c.degree() || candidate.kind() != c.kind())
    fail("ShapeMismatch", "candidate must be one degree below, same kind");
  Cochain d = cech_d(candidate);
  switch (c.kind()) {
    case SheafKind::Additive:
      return c.scalar() == d.scalar();
    case SheafKind::Units:
    case SheafKind::ConstantUnits:
      return c.scalar() == d.scalar();
    case SheafKind::ProjectiveLinear: {
      auto s = (c.matrix() * *d.matrix().inverse()).as_scalar();
      return s.has_value() && s->inverse().has_value();
    }
  }
  return false;
}

RingElem dlog(const RingElem& u) {
  auto inv = u.inverse();
  if (!inv) fail("NotAUnit", "logarithmic derivative of a non-unit");
  return u.d() * *inv;
}

Cochain pgl_cocycle_from_descent(const DescentDatum& d) {
  if (d.kind() != DatumKind::Algebra)
    fail("NotConjugation", "module data carry no conjugation structure");
  const TowerPtr& tw = d.tower();
  const RingPtr& bb = tw->level(2);
  const std::size_t nn = d.module().rank();
  const std::size_t n = static_cast<std::size_t>(
      std::llround(std::sqrt(static_cast<double>(nn))));

  auto phi_of = [&](std::size_t i, std::size_t j) {
    Mat e = Mat::unit(bb, n, i, j);
    Mat col = Mat::unvec(bb, e.vec(), nn, 1);
    return Mat::unvec(bb, (d.phi() * col).vec(), n, n);
  };

  std::vector<Mat> phi_col(n, Mat(bb, 0, 0));
  for (std::size_t i = 0; i < n; ++i) phi_col[i] = phi_of(i, 0);

  // Since φ is multiplicative, u = Σ_i φ(e_{i1})·R·e_{1i} satisfies
  // φ(e)·u = u·e for every matrix unit e and any choice of R, and only the
  // first column of R matters.  Search that column for an invertible u.
  auto try_column = [&](const std::vector<RingElem>& r) -> std::optional<Mat> {
    Mat u = Mat::zero(bb, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < n; ++a) {
        RingElem entry = bb->zero();
        for (std::size_t k = 0; k < n; ++k)
          entry = entry + phi_col[i].at(a, k) * r[k];
        u.at(a, i) = u.at(a, i) + entry;
      }
    if (!u.det().inverse()) return std::nullopt;
    auto uinv = *u.inverse();
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (!(phi_of(p, q) == u * Mat::unit(bb, n, p, q) * uinv))
          return std::nullopt;
    return u;
  };

  // unit vectors, then every small rational pattern, then random elements
  std::vector<std::vector<RingElem>> trials;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<RingElem> r(n, bb->zero());
    r[k] = bb->one();
    trials.push_back(std::move(r));
  }
  std::size_t patterns = 1;
  for (std::size_t k = 0; k < n; ++k) patterns *= 5;
  for (std::size_t code = 0; code < patterns; ++code) {
    std::vector<RingElem> r(n, bb->zero());
    std::size_t rest = code;
    for (std::size_t k = 0; k < n; ++k) {
      int c = static_cast<int>(rest % 5) - 2;
      rest /= 5;
      r[k] = bb->constant(c);
    }
    trials.push_back(std::move(r));
  }
  std::mt19937_64 rng(0x5eedULL);
  for (int it = 0; it < 60; ++it) {
    std::vector<RingElem> r(n, bb->zero());
    for (std::size_t k = 0; k < n; ++k) r[k] = random_elem(rng, bb, 2);
    trials.push_back(std::move(r));
  }
  for (const auto& r : trials)
    if (auto u = try_column(r)) return Cochain(tw, 1, std::move(*u));
  fail("NotConjugation", "conjugation system has no invertible solution");
}

namespace {

/// Checks that lift reduces to the cochain modulo scalar units.
void require_lift(const Cochain& c, const Mat& lift) {
  if (c.kind() != SheafKind::ProjectiveLinear || c.degree() != 1)
    fail("ShapeMismatch", "boundary input must be a degree-1 matrix cochain");
  if (lift.ring().get() != c.tower()->level(2).get() ||
      lift.rows() != c.matrix().rows() || lift.cols() != c.matrix().cols())
    fail("ShapeMismatch", "lift has the wrong shape or ring");
  auto inv = c.matrix().inverse();
  auto s = (lift * *inv).as_scalar();
  if (!s || !s->inverse())
    fail("LiftMismatch", "lift does not reduce to the cochain mod scalars");
}

}  // namespace

TwoCocycle boundary2(const Cochain& c, const Mat& lift,
                     bool differential_variant) {
  require_lift(c, lift);
  const TowerPtr& tw = c.tower();
  if (differential_variant) {
    auto defect = (*lift.inverse() * lift.d()).as_scalar();
    if (!defect)
      fail("LiftMismatch",
           "lift does not define a differential automorphism");
  }
  Mat l13 = lift.map(tw->coface(2, 1));
  Mat l23 = lift.map(tw->coface(2, 0));
  Mat l12 = lift.map(tw->coface(2, 2));
  Mat w = *l13.inverse() * l23 * l12;
  auto s = w.as_scalar();
  if (!s || !s->inverse())
    fail("NotScalar", "boundary of the lift is not a scalar unit");
  if (differential_variant && !s->d().is_zero())
    fail("NotScalar", "boundary scalar is not differentially constant");

  // degree-2 cocycle identity over the fourth amalgam level
  Amalgam am4 = make_amalgam(tw->cover(), 4);
  RingElem check = tw->level(3)->one();
  std::vector<RingElem> ws;
  for (std::size_t i = 0; i <= 3; ++i) {
    RingHom di = Amalgam::coface(tw->amalgam(3), am4, i);
    ws.push_back(di.apply(*s));
  }
  RingElem ident = ws[0] * *ws[1].inverse() * ws[2] * *ws[3].inverse();
  TwoCocycle out;
  out.tower = tw;
  out.value = *s;
  out.constant_kind = differential_variant;
  out.degree2_identity_ok = ident == am4.ring()->one();
  return out;
}

CheckReport lift_independence_check(const Cochain& c, const Mat& lift1,
                                    const Mat& lift2) {
  CheckReport rep;
  require_lift(c, lift1);
  require_lift(c, lift2);
  auto s = (lift2 * *lift1.inverse()).as_scalar();
  if (!s || !s->inverse())
    fail("LiftMismatch", "the two lifts do not differ by a scalar");
  TwoCocycle w1 = boundary2(c, lift1);
  TwoCocycle w2 = boundary2(c, lift2);
  Cochain ratio(c.tower(), 1, SheafKind::Units, *s);
  Cochain cob = cech_d(ratio);
  rep.require(w2.value * *w1.value.inverse() == cob.scalar(),
              "changing the lift does not change the boundary by the "
              "expected coboundary");
  return rep;
}

CheckReport boundary_additivity_check(const Cochain& cm, const Mat& lift_m,
                                      const Cochain& cn, const Mat& lift_n) {
  CheckReport rep;
  if (cm.tower().get() != cn.tower().get())
    fail("RingMismatch", "cochains must share one cover tower");
  TwoCocycle wm = boundary2(cm, lift_m);
  TwoCocycle wn = boundary2(cn, lift_n);
  Cochain prod(cm.tower(), 1, cm.matrix().kron(cn.matrix()));
  TwoCocycle wp = boundary2(prod, lift_m.kron(lift_n));
  rep.require(wp.value == wm.value * wn.value,
              "boundary of the product differs from the product of the "
              "boundaries");
  return rep;
}

}  // namespace diffalg
