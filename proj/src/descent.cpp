#include "diffalg/descent.hpp"

#include <cmath>

#include "diffalg/errors.hpp"
#include "diffalg/frac.hpp"

namespace diffalg {

// ---------------------------------------------------------------------------
// CoverTower

CoverTower::CoverTower(const RingHom& cover) : cover_(cover) {
  for (std::size_t m = 1; m <= 3; ++m) amalgams_.push_back(make_amalgam(cover, m));
  for (std::size_t m = 1; m <= 2; ++m) {
    std::vector<RingHom> row;
    for (std::size_t i = 0; i <= m; ++i)
      row.push_back(Amalgam::coface(amalgams_[m - 1], amalgams_[m], i));
    cofaces_.push_back(std::move(row));
  }
}

std::shared_ptr<const CoverTower> CoverTower::make(const RingHom& cover) {
  return std::shared_ptr<const CoverTower>(new CoverTower(cover));
}

const RingPtr& CoverTower::level(std::size_t m) const {
  return amalgam(m).ring();
}

const Amalgam& CoverTower::amalgam(std::size_t m) const {
  if (m < 1 || m > 3) fail("UnsupportedTower", "amalgam level out of range");
  return amalgams_[m - 1];
}

const RingHom& CoverTower::coface(std::size_t m, std::size_t i) const {
  if (m < 1 || m > 2 || i > m)
    fail("UnsupportedTower", "coface index out of range");
  return cofaces_[m - 1][i];
}

const RingHom& CoverTower::embedding(std::size_t m, std::size_t j) const {
  return amalgam(m).embedding(j);
}

// ---------------------------------------------------------------------------
// DescentDatum

namespace {

Mat apply_phi(const Mat& phi, const Mat& x) {
  std::size_t n = x.rows();
  Mat col = Mat::unvec(x.ring(), x.vec(), n * n, 1);
  return Mat::unvec(x.ring(), (phi * col).vec(), n, n);
}

}  // namespace

DescentDatum::DescentDatum(TowerPtr tower, DiffModule module, Mat phi,
                           DatumKind kind)
    : tower_(std::move(tower)),
      mod_(std::move(module)),
      phi_(std::move(phi)),
      kind_(kind) {
  if (mod_.ring().get() != tower_->level(1).get())
    fail("RingMismatch", "module must live over the cover ring");
  if (phi_.ring().get() != tower_->level(2).get())
    fail("RingMismatch", "phi must live over the level-2 amalgam");
  if (phi_.rows() != mod_.rank() || phi_.cols() != mod_.rank())
    fail("ShapeMismatch", "phi must be rank x rank");
  if (!phi_.det().inverse())
    fail("NotInvertible", "phi is not invertible over the amalgam");

  // φ must intertwine the connections induced through the two embeddings
  Mat d1 = mod_.connection().map(tower_->embedding(2, 1));
  Mat d2 = mod_.connection().map(tower_->embedding(2, 2));
  if (!(phi_.d() + d2 * phi_ - phi_ * d1).is_zero())
    fail("NotDifferential", "phi does not commute with the derivations");

  if (kind_ == DatumKind::Algebra) {
    std::size_t n = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(mod_.rank()))));
    if (n * n != mod_.rank())
      fail("ShapeMismatch", "algebra datum requires a square rank");
    const RingPtr& bb = tower_->level(2);
    if (apply_phi(phi_, Mat::identity(bb, n)) != Mat::identity(bb, n))
      fail("NotClosed", "phi does not fix the identity");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            Mat lhs = apply_phi(phi_, Mat::unit(bb, n, i, j)) *
                      apply_phi(phi_, Mat::unit(bb, n, k, l));
            Mat prod = j == k ? Mat::unit(bb, n, i, l) : Mat::zero(bb, n, n);
            if (lhs != apply_phi(phi_, prod))
              fail("NotClosed", "phi is not multiplicative on matrix units");
          }
  }
}

DescentDatum DescentDatum::canonical(const TowerPtr& tower,
                                     const DiffModule& m, DatumKind kind) {
  if (m.ring().get() != tower->base().get())
    fail("RingMismatch", "canonical datum starts from a base module");
  DiffModule ext(tower->level(1), m.connection().map(tower->cover()));
  Mat phi = Mat::identity(tower->level(2), m.rank());
  return DescentDatum(tower, std::move(ext), std::move(phi), kind);
}

bool DescentDatum::cocycle_check() const {
  Mat phi13 = phi_.map(tower_->coface(2, 1));
  Mat phi23 = phi_.map(tower_->coface(2, 0));
  Mat phi12 = phi_.map(tower_->coface(2, 2));
  return phi13 == phi23 * phi12;
}

// ---------------------------------------------------------------------------
// descend_module

namespace {

/// Monomial basis of B over the base of its tower; B must add only monic
/// generators (and no localization layers) beyond the base.
std::vector<RingElem> monic_basis_over_base(const RingPtr& base,
                                            const RingPtr& b) {
  if (b->num_loc_layers() != base->num_loc_layers())
    fail("UnsupportedTower",
         "cover ring localizes beyond the base; not finite free");
  std::vector<RingElem> basis{b->one()};
  for (std::size_t g = base->num_gens(); g < b->num_gens(); ++g) {
    if (b->gen(g).kind != GenKind::Monic)
      fail("UnsupportedTower",
           "cover ring adjoins a free variable; not finite free");
    std::vector<RingElem> next;
    for (const auto& e : basis)
      for (uint32_t k = 0; k < b->gen(g).rel_deg; ++k)
        next.push_back(e * b->gen_elem(g).pow(k));
    basis = std::move(next);
  }
  return basis;
}

/// Clears denominators of a Frac vector into elements of the ring a, by
/// repeatedly scaling with offending denominators.
std::optional<std::vector<RingElem>> clear_to_ring(std::vector<Frac> v,
                                                   const RingPtr& a) {
  const FracModel& fm = a->frac_model();
  for (int attempt = 0; attempt < 32; ++attempt) {
    std::vector<RingElem> out;
    bool ok = true;
    for (const auto& f : v) {
      auto e = fm.frac_to_elem(f);
      if (!e) {
        ok = false;
        Poly den = f.den;
        for (auto& g : v) {
          g.num = g.num * den;
          g.normalize();
        }
        break;
      }
      out.emplace_back(a, *e);
    }
    if (ok) return out;
  }
  return std::nullopt;
}

}  // namespace

DescendedModule descend_module(const DescentDatum& d) {
  const TowerPtr& tw = d.tower();
  const RingPtr& a = tw->base();
  const RingPtr& b = tw->level(1);
  const RingPtr& bb = tw->level(2);
  const std::size_t n = d.module().rank();

  if (d.phi() == Mat::identity(bb, n)) {
    // identity datum: G is the base-coefficient span of the given basis
    Mat conn(a, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto e = try_restrict(d.module().connection().at(i, j), a);
        if (!e)
          fail("KernelNotFree",
               "identity datum with a connection not defined over the base");
        conn.at(i, j) = *e;
      }
    return DescendedModule{Mat::identity(b, n), std::move(conn)};
  }

  if (!d.cocycle_check())
    fail("CocycleFailed", "descent datum fails the cocycle identity");

  std::vector<RingElem> bmon = monic_basis_over_base(a, b);
  const std::size_t m = bmon.size();
  const FracModel& fm = bb->frac_model();
  const std::size_t dim = fm.dim();

  // unknown x = Σ_{r,β} a_{rβ}·bmon_β·e_r; the condition φ·ι₂(x) = ι₁(x)
  // becomes a K-linear system in the a's after expanding over the
  // monomial basis of B⊗B
  const RingHom& e1 = tw->embedding(2, 1);
  const RingHom& e2 = tw->embedding(2, 2);
  FracMatrix big(n * dim, std::vector<Frac>(n * m, Frac::constant(0)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t be = 0; be < m; ++be) {
      Mat col(bb, n, 1);
      col.at(r, 0) = e2.apply(bmon[be]);
      Mat v = d.phi() * col;
      v.at(r, 0) = v.at(r, 0) - e1.apply(bmon[be]);
      for (std::size_t row = 0; row < n; ++row) {
        auto cc = fm.coords(fm.to_telem(v.at(row, 0).data()));
        for (std::size_t k = 0; k < dim; ++k)
          big[row * dim + k][r * m + be] = cc[k];
      }
    }

  auto kernel = kernel_basis(std::move(big));
  if (kernel.size() != n)
    fail("KernelNotFree", "descended rank does not match the module rank");

  Mat basis(b, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    auto coeffs = clear_to_ring(kernel[k], a);
    if (!coeffs)
      fail("KernelNotFree", "kernel vector has non-unit denominators");
    for (std::size_t r = 0; r < n; ++r) {
      RingElem acc = b->zero();
      for (std::size_t be = 0; be < m; ++be)
        acc = acc + promote((*coeffs)[r * m + be], b) * bmon[be];
      basis.at(r, k) = acc;
    }
  }

  // exact re-verification of the defining condition for every basis column
  for (std::size_t k = 0; k < n; ++k) {
    Mat c1(bb, n, 1), c2(bb, n, 1);
    for (std::size_t r = 0; r < n; ++r) {
      c1.at(r, 0) = e1.apply(basis.at(r, k));
      c2.at(r, 0) = e2.apply(basis.at(r, k));
    }
    if (d.phi() * c2 != c1)
      fail("KernelNotFree", "computed kernel fails the descent condition");
  }

  auto binv = basis.inverse();
  if (!binv)
    fail("KernelNotFree",
         "descended basis does not generate the module over the cover");

  // δ stabilizes G, so expanding δ(g_k) in the basis has base coefficients
  Mat conn(a, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Mat col(b, n, 1);
    for (std::size_t r = 0; r < n; ++r) col.at(r, 0) = basis.at(r, k);
    Mat rhs = *binv * d.module().apply_delta(col);
    for (std::size_t l = 0; l < n; ++l) {
      auto e = try_restrict(rhs.at(l, 0), a);
      if (!e)
        fail("KernelNotFree",
             "descended connection is not defined over the base");
      conn.at(l, k) = *e;
    }
  }
  return DescendedModule{std::move(basis), std::move(conn)};
}

DescendedAlgebra descend_algebra(const DescentDatum& d) {
  if (d.kind() != DatumKind::Algebra)
    fail("ShapeMismatch", "algebra descent requires an algebra datum");
  const RingPtr& a = d.tower()->base();
  const RingPtr& b = d.tower()->level(1);
  const std::size_t nn = d.module().rank();
  const std::size_t n = static_cast<std::size_t>(
      std::llround(std::sqrt(static_cast<double>(nn))));

  DescendedModule dm = descend_module(d);
  auto minv = dm.basis.inverse();
  if (!minv)
    fail("KernelNotFree",
         "descended span does not generate the matrix algebra");

  DescendedAlgebra out;
  for (std::size_t k = 0; k < nn; ++k) {
    std::vector<RingElem> col;
    for (std::size_t r = 0; r < nn; ++r) col.push_back(dm.basis.at(r, k));
    out.basis.push_back(Mat::unvec(b, col, n, n));
  }

  auto expand = [&](const Mat& x) {
    Mat rhs = *minv * Mat::unvec(b, x.vec(), nn, 1);
    std::vector<RingElem> coeffs;
    for (std::size_t c = 0; c < nn; ++c) {
      auto e = try_restrict(rhs.at(c, 0), a);
      if (!e)
        fail("NotClosed",
             "product or unit leaves the descended base-coefficient span");
      coeffs.push_back(*e);
    }
    return coeffs;
  };

  out.sc.resize(nn);
  for (std::size_t p = 0; p < nn; ++p)
    for (std::size_t q = 0; q < nn; ++q)
      out.sc[p].push_back(expand(out.basis[p] * out.basis[q]));
  for (std::size_t p = 0; p < nn; ++p) {
    std::vector<RingElem> row;
    for (std::size_t c = 0; c < nn; ++c) row.push_back(dm.connection.at(c, p));
    out.dtab.push_back(std::move(row));
  }
  out.unit = expand(Mat::identity(b, n));
  return out;
}

bool twisted_form_equiv(const DescentDatum& d, const DescentDatum& d2,
                        const Mat& alpha) {
  if (d.tower().get() != d2.tower().get())
    fail("RingMismatch", "data must share one cover tower");
  const std::size_t n = d.module().rank();
  if (d2.module().rank() != n || alpha.rows() != n || alpha.cols() != n)
    fail("ShapeMismatch", "alpha must be rank x rank over the cover ring");
  if (alpha.ring().get() != d.tower()->level(1).get())
    fail("RingMismatch", "alpha must live over the cover ring");
  if (!alpha.det().inverse()) return false;
  // alpha must be differential for the two module structures
  if (!(alpha.d() + d2.module().connection() * alpha -
        alpha * d.module().connection())
           .is_zero())
    return false;
  Mat a1 = alpha.map(d.tower()->embedding(2, 1));
  Mat a2 = alpha.map(d.tower()->embedding(2, 2));
  return a2 * d.phi() == d2.phi() * a1;
}

}  // namespace diffalg
