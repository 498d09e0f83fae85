#include "diffalg/azumaya.hpp"

#include <string>

#include "diffalg/errors.hpp"

namespace diffalg {

DiffMatrixAlgebra::DiffMatrixAlgebra(RingPtr ring, std::size_t n, Mat z)
    : ring_(std::move(ring)), n_(n), z_(std::move(z)) {
  if (z_.rows() != n_ || z_.cols() != n_)
    fail("ShapeMismatch", "witness matrix must be n x n");
  if (z_.ring().get() != ring_.get())
    fail("RingMismatch", "witness matrix over the wrong ring");
  if (!z_.trace().is_zero())
    fail("NonzeroTrace", "witness matrix must have trace zero");
}

DiffMatrixAlgebra matrix_algebra(const RingPtr& r, std::size_t n,
                                 const Mat& z) {
  return DiffMatrixAlgebra(r, n, z);
}

Mat DiffMatrixAlgebra::delta(const Mat& x) const {
  if (x.rows() != n_ || x.cols() != n_)
    fail("ShapeMismatch", "algebra element must be n x n");
  return x.d() + z_.commutator(x);
}

DiffMatrixAlgebra DiffMatrixAlgebra::opposite() const {
  return DiffMatrixAlgebra(ring_, n_, -z_.transpose());
}

DiffMatrixAlgebra DiffMatrixAlgebra::tensor_alg(
    const DiffMatrixAlgebra& o) const {
  if (ring_.get() != o.ring_.get())
    fail("RingMismatch", "tensor factors over different rings");
  Mat w = z_.kron(Mat::identity(ring_, o.n_)) +
          Mat::identity(ring_, n_).kron(o.z_);
  return DiffMatrixAlgebra(ring_, n_ * o.n_, w);
}

DiffMatrixAlgebra DiffMatrixAlgebra::base_change(const RingPtr& target) const {
  return DiffMatrixAlgebra(target, n_, z_.promote_to(target));
}

Mat inner_witness(const RingPtr& r, std::size_t n,
                  const std::vector<std::vector<Mat>>& values) {
  if (values.size() != n)
    fail("ShapeMismatch", "value table must cover all matrix units");
  for (const auto& row : values) {
    if (row.size() != n)
      fail("ShapeMismatch", "value table must cover all matrix units");
    for (const auto& v : row)
      if (v.rows() != n || v.cols() != n)
        fail("ShapeMismatch", "value table entries must be n x n");
  }

  // the table must vanish on 1 = Σ e_ii ...
  Mat sum = Mat::zero(r, n, n);
  for (std::size_t i = 0; i < n; ++i) sum = sum + values[i][i];
  if (!sum.is_zero())
    fail("NotADerivation", "table does not vanish on the identity");
  // ... and satisfy Leibniz on products of matrix units:
  // e_ij·e_kl = [j=k]·e_il
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Mat lhs = (j == k) ? values[i][l] : Mat::zero(r, n, n);
          Mat rhs = values[i][j] * Mat::unit(r, n, k, l) +
                    Mat::unit(r, n, i, j) * values[k][l];
          if (lhs != rhs)
            fail("NotADerivation", "table breaks Leibniz on matrix units");
        }

  // solve values[i][j] = z·e_ij − e_ij·z for z, entrywise:
  // ([z,e_ij])_{ab} = z_{ai}[b=j] − [a=i]z_{jb}, unknowns z_{pq} at p·n+q
  std::vector<std::vector<Rat>> m;
  std::vector<RingElem> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t bb = 0; bb < n; ++bb) {
          std::vector<Rat> row(n * n, 0);
          if (bb == j) row[a * n + i] += 1;
          if (a == i) row[j * n + bb] -= 1;
          m.push_back(std::move(row));
          b.push_back(values[i][j].at(a, bb));
        }
  // trace normalization picks the unique representative
  std::vector<Rat> tr(n * n, 0);
  for (std::size_t p = 0; p < n; ++p) tr[p * n + p] = 1;
  m.push_back(std::move(tr));
  b.push_back(r->zero());

  auto sol = solve_rat_system(std::move(m), std::move(b), r);
  if (!sol) fail("NoSolution", "value table is not an inner derivation");
  Mat z(r, n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) z.at(p, q) = (*sol)[p * n + q];
  return z;
}

bool is_diff_automorphism(const DiffMatrixAlgebra& src,
                          const DiffMatrixAlgebra& dst, const Mat& u) {
  if (src.ring().get() != dst.ring().get())
    fail("RingMismatch", "source and target over different rings");
  if (src.n() != dst.n() || u.rows() != src.n() || u.cols() != src.n())
    fail("ShapeMismatch", "conjugating matrix has the wrong shape");
  auto uinv = u.inverse();
  if (!uinv) fail("NotInvertible", "conjugating matrix is not a unit");
  Mat c = *uinv * (u.d() + dst.z() * u - u * src.z());
  return c.as_scalar().has_value();
}

CheckReport rho_check(const DiffMatrixAlgebra& alg) {
  CheckReport rep;
  const RingPtr& r = alg.ring();
  const std::size_t n = alg.n();
  const Mat& z = alg.z();
  const std::size_t nn = n * n;
  Mat in = Mat::identity(r, n);

  // Λ viewed as a module over itself: vec(Δx) = (vec x)' + C·vec x
  Mat conn = in.kron(z) - z.transpose().kron(in);
  DiffModule lam(r, conn);
  auto end_delta = [&](const Mat& g) { return lam.map_delta(lam, g); };

  std::vector<Mat> images;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Mat a = Mat::unit(r, n, i, j);   // λ₁ in Λ
          Mat bb = Mat::unit(r, n, k, l);  // λ₂ in Λᵒᵖ (untransposed model)
          // ρ(a⊗b): x ↦ a·x·b, i.e. bᵀ⊗a on column-stacked coordinates
          Mat rho = bb.transpose().kron(a);
          // Δ on the source is Δa⊗b + a⊗Δᵒᵖb; Δᵒᵖ is the same map Δ
          Mat pushed = bb.transpose().kron(alg.delta(a)) +
                       alg.delta(bb).transpose().kron(a);
          rep.require(pushed == end_delta(rho),
                      "rho fails to intertwine the derivations on a "
                      "matrix-unit pair");
          images.push_back(std::move(rho));
        }

  // bijectivity: the images are exactly the nn x nn matrix units
  bool bij = images.size() == nn * nn;
  std::vector<bool> seen(nn * nn, false);
  for (const auto& g : images) {
    std::size_t hits = 0, slot = 0;
    for (std::size_t a = 0; a < nn && bij; ++a)
      for (std::size_t c = 0; c < nn; ++c) {
        if (g.at(a, c).is_zero()) continue;
        ++hits;
        slot = a * nn + c;
        bij = bij && g.at(a, c) == r->one();
      }
    bij = bij && hits == 1 && !seen[slot];
    if (bij) seen[slot] = true;
  }
  rep.require(bij, "rho is not bijective on the matrix-unit basis");
  return rep;
}

namespace {

std::string cell_name(const std::string& stem, std::size_t i, std::size_t j) {
  return stem + std::to_string(i + 1) + std::to_string(j + 1);
}

/// Adjoins an n x n matrix of indeterminates with δ(new matrix) given by
/// rule(new matrix), then localizes at its determinant.
std::pair<Cover, Mat> matrix_cover(const RingPtr& r, std::size_t n,
                                   const std::string& stem,
                                   const std::function<Mat(const Mat&)>& rule) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) names.push_back(cell_name(stem, i, j));
  std::size_t base_gens = r->num_gens();
  auto adjoined = DiffRing::adjoin(
      r, names, [&](const RingPtr& rc) {
        Mat t(rc, n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            t.at(i, j) = rc->gen_elem(base_gens + i * n + j);
        Mat dt = rule(t);
        std::vector<RingElem> out;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) out.push_back(dt.at(i, j));
        return out;
      });
  Mat t(adjoined, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.at(i, j) = adjoined->gen_elem(base_gens + i * n + j);
  auto cover_ring = DiffRing::localize(adjoined, t.det());
  Cover cover{RingHom::inclusion(r, cover_ring), names};
  return {std::move(cover), t.promote_to(cover_ring)};
}

}  // namespace

ModuleTrivialization trivialize_module(const DiffModule& m) {
  const RingPtr& r = m.ring();
  auto [cover, t] = matrix_cover(
      r, m.rank(), "T", [&](const Mat& tm) {
        // δT = −D·T makes every column of T a δ-constant vector
        return -(m.connection().promote_to(tm.ring()) * tm);
      });
  return ModuleTrivialization{std::move(cover), std::move(t)};
}

AlgebraTrivialization trivialize_algebra(const DiffMatrixAlgebra& alg) {
  const RingPtr& r = alg.ring();
  auto [cover, u] = matrix_cover(
      r, alg.n(), "U", [&](const Mat& um) {
        // δU = U·z zeroes the scalar-criterion defect of conjugation by U
        return um * alg.z().promote_to(um.ring());
      });
  return AlgebraTrivialization{std::move(cover), std::move(u)};
}

ExpCover exp_cover(const RingPtr& r, const RingElem& b) {
  std::size_t base_gens = r->num_gens();
  auto adjoined = DiffRing::adjoin(r, {"U"}, [&](const RingPtr& rc) {
    return std::vector<RingElem>{promote(b, rc) * rc->gen_elem(base_gens)};
  });
  auto u0 = adjoined->gen_elem(base_gens);
  auto cover_ring = DiffRing::localize(adjoined, u0);
  Cover cover{RingHom::inclusion(r, cover_ring), {"U"}};
  return ExpCover{std::move(cover), promote(u0, cover_ring)};
}

}  // namespace diffalg
