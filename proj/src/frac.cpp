#include "diffalg/frac.hpp"

#include <algorithm>

#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

bool only_var(const Poly& p, long v) {
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] > 0 && static_cast<long>(i) != v) return false;
  return true;
}

long single_var(const Poly& p) {
  long v = -1;
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] > 0) {
        if (v >= 0 && v != static_cast<long>(i)) return -2;
        v = static_cast<long>(i);
      }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Frac

void Frac::normalize() {
  if (num.is_zero()) {
    den = Poly::constant(1);
    return;
  }
  if (den.is_zero()) fail("ZeroDenominator", "fraction with zero denominator");
  Poly n = num, d = den;
  Rat cn = n.extract_content();
  Rat cd = d.extract_content();
  Rat scalar = cn / cd;
  Poly q;
  if (d.is_constant()) {
    num = n * (scalar / d.constant_value());
    den = Poly::constant(1);
    return;
  }
  if (n.try_exact_divide(d, q)) {
    num = q * scalar;
    den = Poly::constant(1);
    return;
  }
  long vn = single_var(n), vd = single_var(d);
  if (vn >= 0 && vn == vd) {
    Poly g = gcd_univariate(n, d, static_cast<std::size_t>(vn));
    if (!g.is_constant()) {
      Poly qn, qd;
      if (n.try_exact_divide(g, qn) && d.try_exact_divide(g, qd)) {
        n = qn;
        d = qd;
      }
    }
  }
  num = n * scalar;
  den = d;
}

Frac Frac::operator+(const Frac& o) const {
  Frac r;
  if (den == o.den) {
    r.num = num + o.num;
    r.den = den;
  } else {
    r.num = num * o.den + o.num * den;
    r.den = den * o.den;
  }
  r.normalize();
  return r;
}

Frac Frac::operator-(const Frac& o) const { return *this + (-o); }

Frac Frac::operator-() const { return Frac{-num, den}; }

Frac Frac::operator*(const Frac& o) const {
  Frac r{num * o.num, den * o.den};
  r.normalize();
  return r;
}

Frac Frac::operator/(const Frac& o) const {
  if (o.num.is_zero()) fail("ZeroDenominator", "division by zero fraction");
  Frac r{num * o.den, den * o.num};
  r.normalize();
  return r;
}

bool Frac::operator==(const Frac& o) const {
  return (num * o.den) == (o.num * den);
}

// ---------------------------------------------------------------------------
// FracModel

FracModel::FracModel(const DiffRing& ring) : ring_(ring) {
  monic_pos_of_var_.assign(ring.num_gens(), -1);
  for (std::size_t i = 0; i < ring.num_gens(); ++i) {
    if (ring.gen(i).kind == GenKind::Monic) {
      monic_pos_of_var_[i] = static_cast<long>(monic_vars_.size());
      monic_vars_.push_back(i);
      monic_deg_.push_back(ring.gen(i).rel_deg);
    } else {
      poly_vars_.push_back(i);
    }
  }
  // monomial basis: all products of monic vars with exponent < degree
  basis_.push_back(Monomial::one());
  for (std::size_t p = 0; p < monic_vars_.size(); ++p) {
    std::vector<Monomial> next;
    for (const auto& b : basis_)
      for (uint32_t e = 0; e < monic_deg_[p]; ++e)
        next.push_back(b * Monomial::var(monic_vars_[p], e));
    basis_ = std::move(next);
  }
  std::sort(basis_.begin(), basis_.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = i;
  rel_rest_cache_.resize(monic_vars_.size());
  loc_inv_cache_.resize(ring.num_loc_layers());
}

const TElem& FracModel::rel_rest_telem(std::size_t pos) const {
  if (!rel_rest_cache_[pos]) {
    ElemData rest = ring_.gen(monic_vars_[pos]).rel_rest;
    ring_.pad(rest);
    rel_rest_cache_[pos] = to_telem(rest);
  }
  return *rel_rest_cache_[pos];
}

const TElem& FracModel::loc_inv_telem(std::size_t layer) const {
  if (loc_inv_cache_[layer]) return *loc_inv_cache_[layer];
  ElemData f = ring_.loc_den(layer);
  ring_.pad(f);
  TElem tf = to_telem(f);  // recursion touches lower layers only
  bool has_monic = false;
  for (const auto& [m, c] : tf.num.terms())
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] > 0 && monic_pos_of_var_[i] >= 0) has_monic = true;
  if (!has_monic) {
    loc_inv_cache_[layer] = TElem{tf.den, tf.num};
    return *loc_inv_cache_[layer];
  }
  // linear solve u with tf * u = 1
  const std::size_t n = dim();
  FracMatrix mat(n, std::vector<Frac>(n, Frac::constant(0)));
  for (std::size_t j = 0; j < n; ++j) {
    TElem col = mul(tf, TElem{Poly::monomial(basis_[j], 1)});
    auto cc = coords(col);
    for (std::size_t i = 0; i < n; ++i) mat[i][j] = cc[i];
  }
  std::vector<Frac> rhs(n, Frac::constant(0));
  rhs[basis_index_.at(Monomial::one())] = Frac::constant(1);
  auto sol = solve_linear(mat, rhs);
  if (!sol)
    fail("ZeroDenominator", "localized denominator is not invertible");
  loc_inv_cache_[layer] = from_coords(*sol);
  return *loc_inv_cache_[layer];
}

TElem FracModel::to_telem(const ElemData& e) const {
  TElem t{e.num, Poly::constant(1)};
  for (std::size_t i = 0; i < e.dexp.size(); ++i) {
    if (e.dexp[i] == 0) continue;
    const TElem& inv = loc_inv_telem(i);
    for (int64_t k = 0; k < e.dexp[i]; ++k) t = mul(t, inv);
  }
  reduce(t);
  return t;
}

void FracModel::reduce(TElem& t) const {
  int guard = 0;
  for (;;) {
    if (++guard > 10000)
      fail("UnsupportedTower", "fraction-model reduction did not settle");
    long pos = -1;
    for (long p = static_cast<long>(monic_vars_.size()) - 1; p >= 0; --p)
      if (t.num.degree_in(monic_vars_[p]) >= monic_deg_[p]) {
        pos = p;
        break;
      }
    if (pos < 0) break;
    std::size_t v = monic_vars_[pos];
    uint32_t d = monic_deg_[pos];
    Poly low, high;
    for (const auto& [m, c] : t.num.terms()) {
      uint32_t e = m.deg_in(v);
      if (e >= d) {
        Monomial m2 = m;
        m2.exp[v] -= d;
        m2.trim();
        high.add_term(m2, c);
      } else {
        low.add_term(m, c);
      }
    }
    const TElem& rr = rel_rest_telem(pos);
    // t = low/den + high*rr.num/(den*rr.den)
    t.num = low * rr.den + high * rr.num;
    t.den = t.den * rr.den;
  }
  // cheap normalization to keep growth in check
  Frac f{t.num, t.den};
  Rat cn = f.num.extract_content();
  Rat cd = f.den.extract_content();
  if (cn != 0) {
    t.num = f.num * (cn / cd);
    t.den = f.den;
  } else {
    t.num = Poly();
    t.den = Poly::constant(1);
  }
  Poly q;
  if (!t.den.is_constant() && t.num.try_exact_divide(t.den, q)) {
    t.num = q;
    t.den = Poly::constant(1);
  } else if (t.den.is_constant() && t.den.constant_value() != 1) {
    t.num = t.num * (Rat(1) / t.den.constant_value());
    t.den = Poly::constant(1);
  }
}

TElem FracModel::mul(const TElem& a, const TElem& b) const {
  TElem r{a.num * b.num, a.den * b.den};
  reduce(r);
  return r;
}

TElem FracModel::add(const TElem& a, const TElem& b) const {
  TElem r;
  if (a.den == b.den) {
    r.num = a.num + b.num;
    r.den = a.den;
  } else {
    r.num = a.num * b.den + b.num * a.den;
    r.den = a.den * b.den;
  }
  reduce(r);
  return r;
}

std::vector<Frac> FracModel::coords(const TElem& t) const {
  std::vector<Poly> parts(dim());
  for (const auto& [m, c] : t.num.terms()) {
    Monomial mon, rest;
    mon.exp.assign(m.exp.size(), 0);
    rest.exp.assign(m.exp.size(), 0);
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      if (monic_pos_of_var_[i] >= 0)
        mon.exp[i] = m.exp[i];
      else
        rest.exp[i] = m.exp[i];
    }
    mon.trim();
    rest.trim();
    parts[basis_index_.at(mon)].add_term(rest, c);
  }
  std::vector<Frac> out;
  for (auto& p : parts) {
    Frac f{p, t.den};
    f.normalize();
    out.push_back(std::move(f));
  }
  return out;
}

TElem FracModel::from_coords(const std::vector<Frac>& c) const {
  TElem acc{Poly(), Poly::constant(1)};
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j].is_zero()) continue;
    TElem t{c[j].num * Poly::monomial(basis_[j], 1), c[j].den};
    acc = add(acc, t);
  }
  return acc;
}

std::optional<ElemData> FracModel::poly_unit_inverse(const Poly& q) const {
  if (q.is_zero()) return std::nullopt;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < ring_.num_loc_layers(); ++i) {
    ElemData f = ring_.loc_den(i);
    bool poly_only = true;
    for (auto m : f.dexp) poly_only = poly_only && m == 0;
    for (const auto& [mo, c] : f.num.terms())
      for (std::size_t v = 0; v < mo.exp.size(); ++v)
        if (mo.exp[v] > 0 && monic_pos_of_var_[v] >= 0) poly_only = false;
    if (poly_only && !f.num.is_constant()) eligible.push_back(i);
  }
  Poly r = q;
  std::vector<int64_t> k(ring_.num_loc_layers(), 0);
  bool progress = true;
  while (progress && !r.is_constant()) {
    progress = false;
    for (std::size_t i : eligible) {
      Poly quo;
      while (r.try_exact_divide(ring_.loc_den(i).num, quo)) {
        r = quo;
        k[i] += 1;
        progress = true;
        if (r.is_constant()) break;
      }
      if (r.is_constant()) break;
    }
  }
  if (r.is_constant()) {
    ElemData inv{Poly::constant(Rat(1) / r.constant_value()), k};
    ring_.pad(inv);
    return inv;
  }
  // r may still divide a product of denominator powers
  if (eligible.empty()) return std::nullopt;
  uint32_t e = r.total_degree();
  Poly g = Poly::constant(1);
  for (std::size_t i : eligible) g = g * ring_.loc_den(i).num.pow(e);
  Poly h;
  if (!g.try_exact_divide(r, h)) return std::nullopt;
  ElemData inv{h, k};
  ring_.pad(inv);
  for (std::size_t i : eligible) inv.dexp[i] += e;
  return inv;
}

std::optional<ElemData> FracModel::frac_to_elem(const Frac& f0) const {
  Frac f = f0;
  f.normalize();
  std::vector<int64_t> zero(ring_.num_loc_layers(), 0);
  if (f.num.is_zero()) return ElemData{Poly(), zero};
  if (f.den.is_constant())
    return ElemData{f.num * (Rat(1) / f.den.constant_value()), zero};
  auto inv = poly_unit_inverse(f.den);
  if (!inv) return std::nullopt;
  return ring_.e_mul(ElemData{f.num, zero}, *inv);
}

std::optional<ElemData> FracModel::to_elem(const TElem& t) const {
  auto cc = coords(t);
  ElemData acc{Poly(), std::vector<int64_t>(ring_.num_loc_layers(), 0)};
  for (std::size_t j = 0; j < cc.size(); ++j) {
    auto e = frac_to_elem(cc[j]);
    if (!e) return std::nullopt;
    acc = ring_.e_add(
        acc, ring_.e_mul(*e, ElemData{Poly::monomial(basis_[j], 1),
                                      std::vector<int64_t>(
                                          ring_.num_loc_layers(), 0)}));
  }
  return acc;
}

std::optional<ElemData> FracModel::inverse(const ElemData& a) const {
  bool has_monic = false;
  for (const auto& [m, c] : a.num.terms())
    for (std::size_t i = 0; i < m.exp.size(); ++i)
      if (m.exp[i] > 0 && monic_pos_of_var_[i] >= 0) has_monic = true;
  if (!has_monic) {
    auto invn = poly_unit_inverse(a.num);
    if (!invn) return std::nullopt;
    // a = N/D, a^{-1} = N^{-1}·D
    ElemData r = *invn;
    for (std::size_t i = 0; i < a.dexp.size(); ++i) {
      ElemData f = ring_.loc_den(i);
      ring_.pad(f);
      for (int64_t k = 0; k < a.dexp[i]; ++k) r = ring_.e_mul(r, f);
    }
    return r;
  }
  TElem ta = to_telem(a);
  const std::size_t n = dim();
  FracMatrix mat(n, std::vector<Frac>(n, Frac::constant(0)));
  for (std::size_t j = 0; j < n; ++j) {
    TElem col = mul(ta, TElem{Poly::monomial(basis_[j], 1)});
    auto cc = coords(col);
    for (std::size_t i = 0; i < n; ++i) mat[i][j] = cc[i];
  }
  std::vector<Frac> rhs(n, Frac::constant(0));
  rhs[basis_index_.at(Monomial::one())] = Frac::constant(1);
  auto sol = solve_linear(mat, rhs);
  if (!sol) return std::nullopt;
  return to_elem(from_coords(*sol));
}

// ---------------------------------------------------------------------------
// linear algebra over Frac

namespace {

struct Rref {
  FracMatrix m;
  std::vector<long> pivot_col_of_row;
  std::vector<long> pivot_row_of_col;
};

Rref rref(FracMatrix m, std::size_t ncols) {
  Rref out;
  std::size_t row = 0;
  out.pivot_row_of_col.assign(ncols, -1);
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t pr = row;
    while (pr < m.size() && m[pr][col].is_zero()) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[row], m[pr]);
    Frac inv = Frac::constant(1) / m[row][col];
    for (std::size_t c = col; c < m[row].size(); ++c)
      m[row][c] = m[row][c] * inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Frac factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        m[r][c] = m[r][c] - factor * m[row][c];
    }
    out.pivot_col_of_row.push_back(static_cast<long>(col));
    out.pivot_row_of_col[col] = static_cast<long>(row);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

}  // namespace

std::optional<std::vector<Frac>> solve_linear(FracMatrix m,
                                              std::vector<Frac> b) {
  if (m.empty()) return std::vector<Frac>{};
  std::size_t ncols = m[0].size();
  for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(b[r]);
  Rref rr = rref(std::move(m), ncols);
  // inconsistent if a pivot sits in the augmented column
  for (const auto& row : rr.m) {
    bool all_zero = true;
    for (std::size_t c = 0; c < ncols; ++c) all_zero &= row[c].is_zero();
    if (all_zero && !row[ncols].is_zero()) return std::nullopt;
  }
  std::vector<Frac> x(ncols, Frac::constant(0));
  for (std::size_t c = 0; c < ncols; ++c) {
    long pr = rr.pivot_row_of_col[c];
    if (pr >= 0) x[c] = rr.m[pr][ncols];
  }
  return x;
}

std::vector<std::vector<Frac>> kernel_basis(FracMatrix m) {
  if (m.empty()) return {};
  std::size_t ncols = m[0].size();
  Rref rr = rref(std::move(m), ncols);
  std::vector<std::vector<Frac>> out;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (rr.pivot_row_of_col[c] >= 0) continue;
    std::vector<Frac> v(ncols, Frac::constant(0));
    v[c] = Frac::constant(1);
    for (std::size_t c2 = 0; c2 < ncols; ++c2) {
      long pr = rr.pivot_row_of_col[c2];
      if (pr >= 0) v[c2] = -rr.m[pr][c];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace diffalg
