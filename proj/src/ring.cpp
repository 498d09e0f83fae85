#include "diffalg/ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "diffalg/frac.hpp"

namespace diffalg {

namespace {

// value-level multiply without monic reduction
ElemData raw_mul(const ElemData& a, const ElemData& b) {
  ElemData r;
  r.num = a.num * b.num;
  r.dexp.resize(std::max(a.dexp.size(), b.dexp.size()), 0);
  for (std::size_t i = 0; i < a.dexp.size(); ++i) r.dexp[i] += a.dexp[i];
  for (std::size_t i = 0; i < b.dexp.size(); ++i) r.dexp[i] += b.dexp[i];
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingElem

bool RingElem::is_zero() const { return data_.num.is_zero(); }

bool RingElem::is_constant() const {
  if (is_zero()) return true;
  if (!data_.num.is_constant()) return false;
  for (auto m : data_.dexp)
    if (m != 0) return false;
  return true;
}

Rat RingElem::constant_value() const {
  if (!is_constant()) fail("ShapeMismatch", "element is not a constant");
  return data_.num.constant_value();
}

RingElem RingElem::operator+(const RingElem& o) const {
  if (ring_.get() != o.ring_.get()) fail("RingMismatch", "element addition");
  return RingElem(ring_, ring_->e_add(data_, o.data_));
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator-() const {
  return RingElem(ring_, ring_->e_neg(data_));
}

RingElem RingElem::operator*(const RingElem& o) const {
  if (ring_.get() != o.ring_.get())
    fail("RingMismatch", "element multiplication");
  return RingElem(ring_, ring_->e_mul(data_, o.data_));
}

RingElem RingElem::operator*(const Rat& c) const {
  ElemData d = data_;
  d.num = d.num * c;
  if (d.num.is_zero()) std::fill(d.dexp.begin(), d.dexp.end(), 0);
  return RingElem(ring_, d);
}

RingElem RingElem::pow(uint32_t e) const {
  RingElem r = ring_->one();
  RingElem base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

bool RingElem::operator==(const RingElem& o) const {
  if (ring_.get() != o.ring_.get()) fail("RingMismatch", "element comparison");
  return ring_->e_eq(data_, o.data_);
}

RingElem RingElem::d() const { return RingElem(ring_, ring_->e_d(data_)); }

std::optional<RingElem> RingElem::inverse() const {
  auto inv = ring_->e_inverse(data_);
  if (!inv) return std::nullopt;
  return RingElem(ring_, *inv);
}

std::string RingElem::to_string() const {
  return ring_->elem_to_string(data_);
}

// ---------------------------------------------------------------------------
// DiffRing construction

DiffRing::~DiffRing() = default;

RingPtr DiffRing::finish_extension(std::shared_ptr<DiffRing> r,
                                   const DerivCallback& derivs,
                                   std::size_t n_new) {
  RingPtr rp = r;
  std::vector<RingElem> ds = derivs ? derivs(rp) : std::vector<RingElem>{};
  if (ds.size() != n_new)
    fail("UnknownVariable", "expected " + std::to_string(n_new) +
                                " derivative assignments, got " +
                                std::to_string(ds.size()));
  for (auto& e : ds) {
    if (e.ring().get() != rp.get())
      fail("RingMismatch", "derivative assignment from a different ring");
    ElemData data = e.data();
    r->pad(data);
    r->gen_derivs_.push_back(std::move(data));
  }
  return rp;
}

RingPtr DiffRing::base(const std::vector<std::string>& vars,
                       const DerivCallback& derivs) {
  auto r = std::shared_ptr<DiffRing>(new DiffRing());
  for (const auto& v : vars) {
    if (r->find_gen(v)) fail("DuplicateVariable", v);
    r->gens_.push_back(Generator{v, GenKind::Poly, 0, {}});
  }
  r->step_ = StepKind::Base;
  r->first_own_gen_ = 0;
  return finish_extension(r, derivs, vars.size());
}

RingPtr DiffRing::rationals() {
  return base({}, [](const RingPtr&) { return std::vector<RingElem>{}; });
}

RingPtr DiffRing::localize(const RingPtr& parent, const RingElem& f) {
  RingElem fp = promote(f, parent);
  if (fp.is_zero()) fail("ZeroDenominator", "localizing at zero");
  auto r = std::shared_ptr<DiffRing>(new DiffRing());
  r->gens_ = parent->gens_;
  r->loc_dens_ = parent->loc_dens_;
  r->gen_derivs_ = parent->gen_derivs_;
  r->parent_ = parent;
  r->step_ = StepKind::Localize;
  r->first_own_gen_ = parent->num_gens();
  ElemData den = fp.data();
  den.dexp.resize(parent->num_loc_layers(), 0);
  r->loc_dens_.push_back(std::move(den));
  for (auto& g : r->gens_) r->pad(g.rel_rest);
  for (auto& e : r->gen_derivs_) r->pad(e);
  for (auto& e : r->loc_dens_) r->pad(e);
  return r;
}

RingPtr DiffRing::adjoin(const RingPtr& parent,
                         const std::vector<std::string>& vars,
                         const DerivCallback& derivs) {
  auto r = std::shared_ptr<DiffRing>(new DiffRing());
  r->gens_ = parent->gens_;
  r->loc_dens_ = parent->loc_dens_;
  r->gen_derivs_ = parent->gen_derivs_;
  r->parent_ = parent;
  r->step_ = StepKind::Adjoin;
  r->first_own_gen_ = parent->num_gens();
  for (const auto& v : vars) {
    if (r->find_gen(v)) fail("DuplicateVariable", v);
    r->gens_.push_back(Generator{v, GenKind::Poly, 0, {}});
  }
  return finish_extension(r, derivs, vars.size());
}

RingPtr DiffRing::monic_quotient(const RingPtr& parent, const std::string& var,
                                 const std::vector<RingElem>& coeffs) {
  const uint32_t d = static_cast<uint32_t>(coeffs.size());
  if (d == 0) fail("ShapeMismatch", "monic relation needs degree >= 1");
  auto r = std::shared_ptr<DiffRing>(new DiffRing());
  r->gens_ = parent->gens_;
  r->loc_dens_ = parent->loc_dens_;
  r->gen_derivs_ = parent->gen_derivs_;
  r->parent_ = parent;
  r->step_ = StepKind::MonicQuotient;
  r->first_own_gen_ = parent->num_gens();
  if (r->find_gen(var)) fail("DuplicateVariable", var);
  const std::size_t tvar = r->gens_.size();
  r->gens_.push_back(Generator{var, GenKind::Monic, d, {}});
  RingPtr rp = r;

  // rel_rest: t^d ≡ -Σ c_k t^k.  Assemble without invoking reduction on
  // powers of t beyond d (the relation is not installed yet anyway:
  // rel_deg entries below d never trigger it).
  std::vector<ElemData> cdata;
  for (const auto& c : coeffs) {
    RingElem cp = promote(c, parent);
    ElemData e = cp.data();
    r->pad(e);
    cdata.push_back(std::move(e));
  }
  ElemData rest;
  rest.num = Poly();
  r->pad(rest);
  for (uint32_t k = 0; k < d; ++k) {
    ElemData term = raw_mul(cdata[k], ElemData{Poly::var(tvar, k), {}});
    term.num = -term.num;
    rest = r->e_add(rest, term);
  }
  r->gens_[tvar].rel_rest = rest;

  // δ(t) from f'(t)·δ(t) + f^δ(t) ≡ 0
  ElemData fprime{Poly::var(tvar, d - 1) * Rat(d), {}};
  r->pad(fprime);
  for (uint32_t k = 1; k < d; ++k) {
    ElemData term = raw_mul(cdata[k], ElemData{Poly::var(tvar, k - 1), {}});
    term.num = term.num * Rat(k);
    fprime = r->e_add(fprime, term);
  }
  auto fprime_inv = r->e_inverse(fprime);
  if (!fprime_inv)
    fail("NotEtale", "f'(" + var + ") is not a unit in the quotient");

  ElemData fdelta;
  r->pad(fdelta);
  for (uint32_t k = 0; k < d; ++k) {
    ElemData dcd = promote(coeffs[k], parent).d().data();
    r->pad(dcd);
    fdelta = r->e_add(
        fdelta,
        r->e_mul(dcd, ElemData{Poly::var(tvar, k),
                               std::vector<int64_t>(r->num_loc_layers(), 0)}));
  }
  ElemData dt = r->e_mul(*fprime_inv, r->e_neg(fdelta));
  r->gen_derivs_.push_back(dt);

  // sanity: δ respects the relation, i.e. δ(t^d) computed by Leibniz
  // matches δ(rel_rest)
  ElemData lhs = r->e_mul(ElemData{Poly::var(tvar, d - 1) * Rat(d),
                                   std::vector<int64_t>(r->num_loc_layers(),
                                                        0)},
                          dt);
  ElemData rhs = r->e_d(r->gens_[tvar].rel_rest);
  if (!r->e_eq(lhs, rhs))
    fail("NotEtale", "derivation does not respect the monic relation");
  return rp;
}

std::optional<std::size_t> DiffRing::find_gen(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

RingElem DiffRing::zero() const { return constant(0); }
RingElem DiffRing::one() const { return constant(1); }

RingElem DiffRing::constant(const Rat& c) const {
  ElemData e{Poly::constant(c), std::vector<int64_t>(num_loc_layers(), 0)};
  return RingElem(shared_from_this(), std::move(e));
}

RingElem DiffRing::gen_elem(std::size_t i) const {
  return from_poly(Poly::var(i));
}

RingElem DiffRing::from_poly(const Poly& p) const {
  ElemData e{p, std::vector<int64_t>(num_loc_layers(), 0)};
  e_reduce(e);
  return RingElem(shared_from_this(), std::move(e));
}

RingElem DiffRing::make(ElemData e) const {
  pad(e);
  e_reduce(e);
  return RingElem(shared_from_this(), std::move(e));
}

RingElem DiffRing::gen_deriv(std::size_t i) const {
  ElemData e = gen_derivs_.at(i);
  pad(e);
  return RingElem(shared_from_this(), std::move(e));
}

bool DiffRing::has_ancestor(const DiffRing* anc) const {
  const DiffRing* cur = this;
  while (cur) {
    if (cur == anc) return true;
    cur = cur->parent_.get();
  }
  return false;
}

// ---------------------------------------------------------------------------
// raw arithmetic

void DiffRing::e_reduce(ElemData& a) const {
  pad(a);
  int guard = 0;
  for (;;) {
    if (++guard > 10000) fail("UnsupportedTower", "reduction did not settle");
    long v = -1;
    for (long i = static_cast<long>(gens_.size()) - 1; i >= 0; --i) {
      if (gens_[i].kind == GenKind::Monic &&
          a.num.degree_in(static_cast<std::size_t>(i)) >= gens_[i].rel_deg) {
        v = i;
        break;
      }
    }
    if (v < 0) break;
    const uint32_t d = gens_[v].rel_deg;
    Poly low, high;
    for (const auto& [m, c] : a.num.terms()) {
      uint32_t e = m.deg_in(static_cast<std::size_t>(v));
      if (e >= d) {
        Monomial m2 = m;
        m2.exp[static_cast<std::size_t>(v)] -= d;
        m2.trim();
        high.add_term(m2, c);
      } else {
        low.add_term(m, c);
      }
    }
    ElemData rr = gens_[v].rel_rest;
    pad(rr);
    ElemData prod = raw_mul(ElemData{high, a.dexp}, rr);
    // common denominator with {low, a.dexp}; done inline to avoid
    // re-entering e_reduce
    ElemData lowE{low, a.dexp};
    // raise to common dexp
    auto raise = [&](ElemData& e, std::size_t layer, int64_t k) {
      ElemData f = loc_dens_[layer];
      pad(f);
      e.num = e.num * f.num.pow(static_cast<uint32_t>(k));
      for (std::size_t j = 0; j < f.dexp.size(); ++j)
        e.dexp[j] += k * f.dexp[j];
      e.dexp[layer] += k;
    };
    for (;;) {
      long diff_layer = -1;
      for (long i = static_cast<long>(num_loc_layers()) - 1; i >= 0; --i)
        if (lowE.dexp[i] != prod.dexp[i]) {
          diff_layer = i;
          break;
        }
      if (diff_layer < 0) break;
      auto& lo = lowE.dexp[diff_layer] < prod.dexp[diff_layer] ? lowE : prod;
      int64_t k = std::llabs(lowE.dexp[diff_layer] - prod.dexp[diff_layer]);
      raise(lo, static_cast<std::size_t>(diff_layer), k);
    }
    a.num = lowE.num + prod.num;
    a.dexp = lowE.dexp;
  }
  if (a.num.is_zero()) std::fill(a.dexp.begin(), a.dexp.end(), 0);
}

ElemData DiffRing::e_add(const ElemData& a0, const ElemData& b0) const {
  ElemData a = a0, b = b0;
  pad(a);
  pad(b);
  auto raise = [&](ElemData& e, std::size_t layer, int64_t k) {
    ElemData f = loc_dens_[layer];
    pad(f);
    e.num = e.num * f.num.pow(static_cast<uint32_t>(k));
    for (std::size_t j = 0; j < f.dexp.size(); ++j) e.dexp[j] += k * f.dexp[j];
    e.dexp[layer] += k;
  };
  for (;;) {
    long diff_layer = -1;
    for (long i = static_cast<long>(num_loc_layers()) - 1; i >= 0; --i)
      if (a.dexp[i] != b.dexp[i]) {
        diff_layer = i;
        break;
      }
    if (diff_layer < 0) break;
    auto& lo = a.dexp[diff_layer] < b.dexp[diff_layer] ? a : b;
    int64_t k = std::llabs(a.dexp[diff_layer] - b.dexp[diff_layer]);
    raise(lo, static_cast<std::size_t>(diff_layer), k);
  }
  ElemData r{a.num + b.num, a.dexp};
  e_reduce(r);
  return r;
}

ElemData DiffRing::e_mul(const ElemData& a, const ElemData& b) const {
  ElemData r = raw_mul(a, b);
  e_reduce(r);
  return r;
}

ElemData DiffRing::e_neg(const ElemData& a) const {
  return ElemData{-a.num, a.dexp};
}

bool DiffRing::e_is_zero(const ElemData& a) const { return a.num.is_zero(); }

bool DiffRing::e_eq(const ElemData& a, const ElemData& b) const {
  return e_is_zero(e_add(a, e_neg(b)));
}

ElemData DiffRing::e_d(const ElemData& a0) const {
  ElemData a = a0;
  pad(a);
  RingPtr self = shared_from_this();
  RingElem res = zero();

  // Σ_v (∂N/∂v)·δ(v) / D
  ElemData inv_den{Poly::constant(1), a.dexp};
  long mv = a.num.max_var();
  for (long v = 0; v <= mv; ++v) {
    Poly part = a.num.formal_derivative(static_cast<std::size_t>(v));
    if (part.is_zero()) continue;
    RingElem term = make(ElemData{part, std::vector<int64_t>()}) *
                    gen_deriv(static_cast<std::size_t>(v));
    res = res + term * make(inv_den);
  }
  // - N/D · Σ m_i δ(f_i)/f_i
  for (std::size_t i = 0; i < num_loc_layers(); ++i) {
    if (a.dexp[i] == 0) continue;
    if (dlog_den_cache_.size() < num_loc_layers())
      dlog_den_cache_.resize(num_loc_layers());
    if (!dlog_den_cache_[i]) {
      ElemData f = loc_dens_[i];
      pad(f);
      ElemData df = e_d(f);  // f references lower layers only
      ElemData unit_inv{Poly::constant(1),
                        std::vector<int64_t>(num_loc_layers(), 0)};
      unit_inv.dexp[i] = 1;
      dlog_den_cache_[i] = e_mul(df, unit_inv);
    }
    RingElem term = make(a) * make(*dlog_den_cache_[i]) * Rat(-a.dexp[i]);
    res = res + term;
  }
  return res.data();
}

std::optional<ElemData> DiffRing::e_inverse(const ElemData& a0) const {
  ElemData a = a0;
  pad(a);
  e_reduce(a);
  if (a.num.is_zero()) return std::nullopt;
  if (a.num.is_constant()) {
    // c/D  ->  D/c
    ElemData r{Poly::constant(Rat(1) / a.num.constant_value()),
               std::vector<int64_t>(num_loc_layers(), 0)};
    for (std::size_t i = 0; i < num_loc_layers(); ++i) {
      if (a.dexp[i] == 0) continue;
      ElemData f = loc_dens_[i];
      pad(f);
      for (int64_t k = 0; k < a.dexp[i]; ++k) r = e_mul(r, f);
    }
    return r;
  }
  auto inv = frac_model().inverse(a);
  if (!inv) return std::nullopt;
  if (!e_eq(e_mul(a, *inv),
            ElemData{Poly::constant(1),
                     std::vector<int64_t>(num_loc_layers(), 0)}))
    return std::nullopt;
  return inv;
}

const FracModel& DiffRing::frac_model() const {
  if (!frac_model_) frac_model_ = std::make_unique<FracModel>(*this);
  return *frac_model_;
}

std::string DiffRing::elem_to_string(const ElemData& a) const {
  auto name = [this](std::size_t i) { return gens_[i].name; };
  std::string s = a.num.to_string(name);
  bool any_den = false;
  for (auto m : a.dexp) any_den = any_den || m != 0;
  if (!any_den) return s;
  std::ostringstream os;
  os << "(" << s << ")/(";
  bool first = true;
  for (std::size_t i = 0; i < a.dexp.size(); ++i) {
    if (a.dexp[i] == 0) continue;
    if (!first) os << "*";
    first = false;
    os << "(" << loc_dens_[i].num.to_string(name) << ")";
    if (a.dexp[i] > 1) os << "^" << a.dexp[i];
  }
  os << ")";
  return os.str();
}

std::string DiffRing::describe() const {
  std::ostringstream os;
  os << "Q";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    os << (i == 0 ? "[" : ",") << gens_[i].name;
  }
  if (!gens_.empty()) os << "]";
  if (num_loc_layers() > 0) os << " loc^" << num_loc_layers();
  return os.str();
}

// ---------------------------------------------------------------------------

RingElem promote(const RingElem& e, const RingPtr& target) {
  if (e.ring().get() == target.get()) return e;
  if (!target->has_ancestor(e.ring().get()))
    fail("RingMismatch", "element does not live in an ancestor of the target");
  ElemData d = e.data();
  return target->make(std::move(d));
}

std::optional<RingElem> try_restrict(const RingElem& e, const RingPtr& anc) {
  if (e.ring().get() == anc.get()) return e;
  if (!e.ring()->has_ancestor(anc.get()))
    fail("RingMismatch", "target is not an ancestor of the element's ring");
  const ElemData& d = e.data();
  if (d.num.max_var() >= static_cast<long>(anc->num_gens()))
    return std::nullopt;
  for (std::size_t i = anc->num_loc_layers(); i < d.dexp.size(); ++i)
    if (d.dexp[i] != 0) return std::nullopt;
  ElemData out{d.num,
               std::vector<int64_t>(d.dexp.begin(),
                                    d.dexp.begin() + anc->num_loc_layers())};
  return anc->make(std::move(out));
}

// ---------------------------------------------------------------------------
// RingHom

RingHom::RingHom(RingPtr src, RingPtr dst, std::vector<RingElem> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (images_.size() != src_->num_gens())
    fail("ShapeMismatch", "one image per source generator required");
  for (auto& im : images_) im = promote(im, dst_);

  // localized denominators must map to units (computed bottom-up so that
  // apply() works for the data of later layers)
  for (std::size_t i = 0; i < src_->num_loc_layers(); ++i) {
    ElemData f = src_->loc_den(i);
    f.dexp.resize(i, 0);  // references lower layers only
    f.dexp.resize(src_->num_loc_layers(), 0);
    RingElem img = apply(RingElem(src_, f));
    auto inv = img.inverse();
    if (!inv)
      fail("NotAUnit", "image of a localized denominator is not a unit");
    loc_den_inv_images_.push_back(*inv);
  }

  // monic relations preserved
  for (std::size_t i = 0; i < src_->num_gens(); ++i) {
    const Generator& g = src_->gen(i);
    if (g.kind != GenKind::Monic) continue;
    RingElem lhs = images_[i].pow(g.rel_deg);
    RingElem rhs = apply(RingElem(src_, g.rel_rest));
    if (lhs != rhs) fail("RelationNotPreserved", g.name);
  }

  // differential on generators
  for (std::size_t i = 0; i < src_->num_gens(); ++i) {
    RingElem lhs = apply(src_->gen_deriv(i));
    RingElem rhs = images_[i].d();
    if (lhs != rhs)
      fail("NotDifferential",
           "hom does not commute with δ on generator " + src_->gen(i).name);
  }
}

RingHom RingHom::inclusion(const RingPtr& src, const RingPtr& dst) {
  if (!dst->has_ancestor(src.get()))
    fail("UnsupportedTower", "inclusion requires a tower extension");
  std::vector<RingElem> images;
  for (std::size_t i = 0; i < src->num_gens(); ++i)
    images.push_back(dst->gen_elem(i));
  return RingHom(src, dst, std::move(images));
}

RingElem RingHom::apply(const RingElem& e) const {
  RingElem ep = promote(e, src_);
  const ElemData& d = ep.data();
  RingElem acc = dst_->zero();
  std::map<std::pair<std::size_t, uint32_t>, RingElem> powcache;
  auto power = [&](std::size_t v, uint32_t k) {
    auto key = std::make_pair(v, k);
    auto it = powcache.find(key);
    if (it != powcache.end()) return it->second;
    RingElem p = images_[v].pow(k);
    powcache.emplace(key, p);
    return p;
  };
  for (const auto& [m, c] : d.num.terms()) {
    RingElem term = dst_->constant(c);
    for (std::size_t v = 0; v < m.exp.size(); ++v)
      if (m.exp[v] > 0) term = term * power(v, m.exp[v]);
    acc = acc + term;
  }
  for (std::size_t i = 0; i < d.dexp.size(); ++i)
    if (d.dexp[i] > 0)
      acc = acc *
            loc_den_inv_images_[i].pow(static_cast<uint32_t>(d.dexp[i]));
  return acc;
}

RingHom RingHom::compose_after(const RingHom& first) const {
  if (first.target().get() != src_.get())
    fail("RingMismatch", "hom composition");
  std::vector<RingElem> images;
  for (const auto& im : first.images()) images.push_back(apply(im));
  return RingHom(first.source(), dst_, std::move(images));
}

// ---------------------------------------------------------------------------
// Amalgam

namespace {

// transports an ElemData between rings through explicit index maps
ElemData transport(const ElemData& e, const std::vector<std::size_t>& gen_map,
                   const std::vector<std::size_t>& layer_map,
                   std::size_t target_layers) {
  ElemData r;
  r.num = e.num.rename_vars(gen_map);
  r.dexp.assign(target_layers, 0);
  for (std::size_t i = 0; i < e.dexp.size(); ++i)
    if (e.dexp[i] != 0) r.dexp[layer_map.at(i)] += e.dexp[i];
  return r;
}

}  // namespace

Amalgam::Amalgam(const RingHom& cover, std::size_t level) : level_(level) {
  base_ = cover.source();
  cover_ring_ = cover.target();
  if (level < 1 || level > 4)
    fail("UnsupportedTower", "amalgam level out of range");
  if (!cover_ring_->has_ancestor(base_.get()))
    fail("UnsupportedTower", "cover target is not a tower over the source");
  for (std::size_t i = 0; i < base_->num_gens(); ++i) {
    if (cover.images()[i] != cover_ring_->gen_elem(i))
      fail("UnsupportedTower", "cover must be the tower inclusion");
  }

  // chain of construction steps from base (exclusive) up to B
  std::vector<const DiffRing*> chain;
  for (const DiffRing* cur = cover_ring_.get(); cur != base_.get();
       cur = cur->parent().get()) {
    if (!cur->parent())
      fail("UnsupportedTower", "cover target does not reach the source");
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());

  if (level == 1) {
    ring_ = cover_ring_;
    std::vector<std::size_t> ident(cover_ring_->num_gens());
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
    copy_gen_map_.push_back(ident);
    embeddings_.push_back(RingHom::inclusion(cover_ring_, cover_ring_));
    return;
  }

  RingPtr cur = base_;
  for (std::size_t copy = 1; copy <= level; ++copy) {
    std::vector<std::size_t> gen_map(cover_ring_->num_gens());
    for (std::size_t i = 0; i < base_->num_gens(); ++i) gen_map[i] = i;
    std::vector<std::size_t> layer_map(cover_ring_->num_loc_layers());
    for (std::size_t i = 0; i < base_->num_loc_layers(); ++i) layer_map[i] = i;

    for (const DiffRing* s : chain) {
      const std::string suffix = "@" + std::to_string(copy);
      switch (s->step_kind()) {
        case StepKind::Adjoin: {
          std::vector<std::string> names;
          std::size_t n_new = s->num_gens() - s->parent()->num_gens();
          for (std::size_t k = 0; k < n_new; ++k)
            names.push_back(s->gen(s->first_own_gen() + k).name + suffix);
          std::size_t cur_gens = cur->num_gens();
          for (std::size_t k = 0; k < n_new; ++k)
            gen_map[s->first_own_gen() + k] = cur_gens + k;
          const DiffRing* s_capture = s;
          auto gm = gen_map;
          auto lm = layer_map;
          cur = DiffRing::adjoin(
              cur, names, [&, s_capture, gm, lm](const RingPtr& nr) {
                std::vector<RingElem> ds;
                for (std::size_t k = 0; k < n_new; ++k) {
                  ElemData e = s_capture->gen_deriv(s_capture->first_own_gen() +
                                                    k)
                                   .data();
                  ds.push_back(nr->make(
                      transport(e, gm, lm, nr->num_loc_layers())));
                }
                return ds;
              });
          break;
        }
        case StepKind::Localize: {
          ElemData den = s->loc_den(s->num_loc_layers() - 1);
          ElemData t = transport(den, gen_map, layer_map,
                                 cur->num_loc_layers());
          RingPtr next = DiffRing::localize(cur, cur->make(t));
          layer_map[s->num_loc_layers() - 1] = next->num_loc_layers() - 1;
          cur = next;
          break;
        }
        case StepKind::MonicQuotient: {
          std::size_t tvar = s->first_own_gen();
          const Generator& g = s->gen(tvar);
          // recover the coefficients of the relation from rel_rest
          ElemData rest = g.rel_rest;
          auto coeff_map = rest.num.coeffs_in(tvar);
          std::vector<RingElem> coeffs;
          for (uint32_t k = 0; k < g.rel_deg; ++k) {
            ElemData c;
            auto it = coeff_map.find(k);
            c.num = it == coeff_map.end() ? Poly() : -it->second;
            c.dexp = rest.dexp;
            coeffs.push_back(cur->make(
                transport(c, gen_map, layer_map, cur->num_loc_layers())));
          }
          gen_map[tvar] = cur->num_gens();
          cur = DiffRing::monic_quotient(cur, g.name + suffix, coeffs);
          break;
        }
        case StepKind::Base:
          fail("UnsupportedTower", "unexpected base step in tower chain");
      }
    }
    copy_gen_map_.push_back(gen_map);
  }
  ring_ = cur;

  for (std::size_t j = 0; j < level; ++j) {
    std::vector<RingElem> images;
    for (std::size_t i = 0; i < cover_ring_->num_gens(); ++i)
      images.push_back(ring_->gen_elem(copy_gen_map_[j][i]));
    embeddings_.push_back(RingHom(cover_ring_, ring_, std::move(images)));
  }
}

const RingHom& Amalgam::embedding(std::size_t j) const {
  if (j < 1 || j > level_) fail("ShapeMismatch", "factor index out of range");
  return embeddings_[j - 1];
}

RingHom Amalgam::coface(const Amalgam& from, const Amalgam& to,
                        std::size_t i) {
  if (to.level_ != from.level_ + 1 || i > from.level_)
    fail("ShapeMismatch", "coface index/level mismatch");
  if (from.base_.get() != to.base_.get() ||
      from.cover_ring_.get() != to.cover_ring_.get())
    fail("RingMismatch", "cofaces require amalgams of one cover");
  // source gen -> (copy, cover gen): invert from.copy_gen_map_
  std::vector<RingElem> images(from.ring_->num_gens(), to.ring_->zero());
  for (std::size_t g = 0; g < from.base_->num_gens(); ++g)
    images[g] = to.ring_->gen_elem(g);
  for (std::size_t copy = 1; copy <= from.level_; ++copy) {
    std::size_t target_copy = copy <= i ? copy : copy + 1;
    for (std::size_t g = from.base_->num_gens();
         g < from.cover_ring_->num_gens(); ++g) {
      std::size_t src_idx = from.copy_gen_map_[copy - 1][g];
      images[src_idx] =
          to.ring_->gen_elem(to.copy_gen_map_[target_copy - 1][g]);
    }
  }
  return RingHom(from.ring_, to.ring_, std::move(images));
}

Amalgam make_amalgam(const RingHom& cover, std::size_t level) {
  return Amalgam(cover, level);
}

}  // namespace diffalg
