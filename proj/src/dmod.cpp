#include "diffalg/dmod.hpp"

#include "diffalg/errors.hpp"

namespace diffalg {

DiffModule::DiffModule(RingPtr ring, Mat connection)
    : ring_(std::move(ring)), conn_(std::move(connection)) {
  if (conn_.rows() != conn_.cols())
    fail("ShapeMismatch", "connection matrix must be square");
  if (conn_.ring().get() != ring_.get())
    fail("RingMismatch", "connection matrix over the wrong ring");
}

DiffModule free_module(const RingPtr& r, const Mat& connection) {
  return DiffModule(r, connection);
}

Mat DiffModule::apply_delta(const Mat& v) const {
  if (v.rows() != rank() || v.cols() != 1)
    fail("ShapeMismatch", "expected a coordinate column of the right rank");
  return v.d() + conn_ * v;
}

std::vector<RingElem> DiffModule::apply_delta(
    const std::vector<RingElem>& v) const {
  return apply_delta(Mat::unvec(ring_, v, rank(), 1)).vec();
}

DiffModule DiffModule::tensor(const DiffModule& o) const {
  if (ring_.get() != o.ring_.get())
    fail("RingMismatch", "tensor factors over different rings");
  Mat im = Mat::identity(ring_, rank());
  Mat in = Mat::identity(ring_, o.rank());
  return DiffModule(ring_, conn_.kron(in) + im.kron(o.conn_));
}

DiffModule DiffModule::dual() const {
  return DiffModule(ring_, -conn_.transpose());
}

DiffModule DiffModule::hom(const DiffModule& o) const {
  if (ring_.get() != o.ring_.get())
    fail("RingMismatch", "hom factors over different rings");
  // vec(g' + D_N g − g D_M) = (vec g)' + (I⊗D_N − D_Mᵀ⊗I)·vec g
  Mat im = Mat::identity(ring_, rank());
  Mat in = Mat::identity(ring_, o.rank());
  return DiffModule(ring_,
                    im.kron(o.connection()) - conn_.transpose().kron(in));
}

Mat DiffModule::map_delta(const DiffModule& o, const Mat& g) const {
  if (g.rows() != o.rank() || g.cols() != rank())
    fail("ShapeMismatch", "map matrix has the wrong shape");
  return g.d() + o.connection() * g - g * conn_;
}

CheckReport hom_tensor_iso_check(const DiffModule& p, const DiffModule& q,
                                 const DiffModule& p2, const DiffModule& q2) {
  CheckReport rep;
  const RingPtr& r = p.ring();
  if (q.ring().get() != r.get() || p2.ring().get() != r.get() ||
      q2.ring().get() != r.get())
    fail("RingMismatch", "all four modules must share one ring");
  DiffModule src = p.tensor(p2);
  DiffModule dst = q.tensor(q2);
  for (std::size_t a = 0; a < q.rank(); ++a)
    for (std::size_t b = 0; b < p.rank(); ++b)
      for (std::size_t c = 0; c < q2.rank(); ++c)
        for (std::size_t d = 0; d < p2.rank(); ++d) {
          Mat f(r, q.rank(), p.rank());
          f.at(a, b) = r->one();
          Mat f2(r, q2.rank(), p2.rank());
          f2.at(c, d) = r->one();
          Mat df = p.map_delta(q, f);
          Mat df2 = p2.map_delta(q2, f2);
          // φ(δ(f⊗f')) = δf⊗f' + f⊗δf' under the Kronecker model
          Mat lhs = df.kron(f2) + f.kron(df2);
          Mat rhs = src.map_delta(dst, f.kron(f2));
          rep.require(lhs == rhs,
                      "tensor-of-maps fails to commute with the derivation "
                      "on a basis pair");
        }
  return rep;
}

CheckReport morita_check(const DiffModule& p) {
  CheckReport rep;
  const RingPtr& r = p.ring();
  const std::size_t n = p.rank();
  const Mat& dconn = p.connection();
  DiffModule q = p.dual();

  auto end_delta = [&](const Mat& g) { return p.map_delta(p, g); };

  // the End(P) derivation is ' + [D,−]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat e = Mat::unit(r, n, i, j);
      rep.require(end_delta(e) == dconn.commutator(e),
                  "End(P) derivation disagrees with [D,-] on a matrix unit");
    }

  // Leibniz for composition on matrix units
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Mat a = Mat::unit(r, n, i, j), b = Mat::unit(r, n, k, l);
          rep.require(end_delta(a * b) ==
                          end_delta(a) * b + a * end_delta(b),
                      "End(P) derivation breaks Leibniz on matrix units");
        }

  // f_P : P⊗Q → End(P), e_i⊗e_j^∨ ↦ E_ij, must be differential; it is
  // bijective because it matches distinct basis to distinct basis.
  DiffModule pq = p.tensor(q);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // δ(e_i⊗e_j^∨) expanded through the tensor connection
      std::vector<RingElem> v(n * n, r->zero());
      v[i * n + j] = r->one();
      auto dv = pq.apply_delta(v);
      Mat img(r, n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          img.at(a, b) = dv[a * n + b];
      rep.require(img == end_delta(Mat::unit(r, n, i, j)),
                  "evaluation pairing into End(P) is not differential");
    }

  // g_P : Q⊗P → A, e_j^∨⊗e_i ↦ δ_ji, must be differential into (A, δ)
  DiffModule qp = q.tensor(p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<RingElem> v(n * n, r->zero());
      v[j * n + i] = r->one();
      auto dv = qp.apply_delta(v);
      RingElem pushed = r->zero();
      for (std::size_t k = 0; k < n; ++k) pushed = pushed + dv[k * n + k];
      RingElem direct = (i == j ? r->one() : r->zero()).d();
      rep.require(pushed == direct,
                  "trace pairing to the base ring is not differential");
    }

  return rep;
}

}  // namespace diffalg
