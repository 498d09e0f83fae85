#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffalg/errors.hpp"
#include "diffalg/poly.hpp"

namespace diffalg {

class DiffRing;
class FracModel;
using RingPtr = std::shared_ptr<const DiffRing>;

enum class GenKind { Poly, Monic };
enum class StepKind { Base, Adjoin, Localize, MonicQuotient };

/// Raw element payload: num / Π den_i^{dexp_i}, where den_i runs over the
/// localization layers of the owning ring.  num is kept reduced modulo the
/// monic relations; dexp entries are always >= 0.
struct ElemData {
  Poly num;
  std::vector<int64_t> dexp;
};

struct Generator {
  std::string name;
  GenKind kind = GenKind::Poly;
  uint32_t rel_deg = 0;   // monic only: degree of the relation
  ElemData rel_rest;      // monic only: t^rel_deg ≡ rel_rest
};

class RingElem {
 public:
  RingElem() = default;
  RingElem(RingPtr ring, ElemData data)
      : ring_(std::move(ring)), data_(std::move(data)) {}

  const RingPtr& ring() const { return ring_; }
  const ElemData& data() const { return data_; }

  bool is_zero() const;
  bool is_constant() const;
  /// Rational value when is_constant(); error otherwise.
  Rat constant_value() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator-() const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator*(const Rat& c) const;
  RingElem pow(uint32_t e) const;
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  /// Applies the ring derivation.
  RingElem d() const;
  /// Multiplicative inverse in the ring, if one exists.
  std::optional<RingElem> inverse() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  ElemData data_;
};

/// A differential commutative ring presented as a tower over Q:
/// Base -> (Adjoin | Localize | MonicQuotient)*.  Immutable once built.
class DiffRing : public std::enable_shared_from_this<DiffRing> {
 public:
  using DerivCallback =
      std::function<std::vector<RingElem>(const RingPtr&)>;

  /// Q[vars] with prescribed derivatives of the generators (the callback
  /// sees the finished ring shape and must return one element per var).
  static RingPtr base(const std::vector<std::string>& vars,
                      const DerivCallback& derivs);
  /// Q itself.
  static RingPtr rationals();
  static RingPtr localize(const RingPtr& parent, const RingElem& f);
  static RingPtr adjoin(const RingPtr& parent,
                        const std::vector<std::string>& vars,
                        const DerivCallback& derivs);
  /// parent[t]/(f) for f = t^d + coeffs[d-1] t^{d-1} + ... + coeffs[0],
  /// coeffs over the parent.  δ(t) is solved from f'(t)δ(t) + f^δ(t) = 0;
  /// NotEtale if f'(t) is not a unit in the quotient.
  static RingPtr monic_quotient(const RingPtr& parent, const std::string& var,
                                const std::vector<RingElem>& coeffs);

  ~DiffRing();

  // --- structure ---------------------------------------------------------
  std::size_t num_gens() const { return gens_.size(); }
  const Generator& gen(std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  std::optional<std::size_t> find_gen(const std::string& name) const;
  std::size_t num_loc_layers() const { return loc_dens_.size(); }
  const ElemData& loc_den(std::size_t i) const { return loc_dens_[i]; }
  const RingPtr& parent() const { return parent_; }
  StepKind step_kind() const { return step_; }
  /// Generators introduced by the last construction step.
  std::size_t first_own_gen() const { return first_own_gen_; }

  // --- elements ----------------------------------------------------------
  RingElem zero() const;
  RingElem one() const;
  RingElem constant(const Rat& c) const;
  RingElem gen_elem(std::size_t i) const;
  RingElem from_poly(const Poly& p) const;
  RingElem make(ElemData e) const;  // reduces and pads

  /// δ of generator i, as an element of this ring.
  RingElem gen_deriv(std::size_t i) const;

  // --- raw payload arithmetic (reduced results) --------------------------
  ElemData e_add(const ElemData& a, const ElemData& b) const;
  ElemData e_mul(const ElemData& a, const ElemData& b) const;
  ElemData e_neg(const ElemData& a) const;
  ElemData e_d(const ElemData& a) const;
  bool e_is_zero(const ElemData& a) const;
  bool e_eq(const ElemData& a, const ElemData& b) const;
  void e_reduce(ElemData& a) const;
  void pad(ElemData& a) const { a.dexp.resize(loc_dens_.size(), 0); }

  std::optional<ElemData> e_inverse(const ElemData& a) const;

  std::string elem_to_string(const ElemData& a) const;
  std::string describe() const;

  /// True if anc appears on the parent chain of this ring (or is this ring).
  bool has_ancestor(const DiffRing* anc) const;

  const FracModel& frac_model() const;

 private:
  DiffRing() = default;
  friend class FracModel;

  // shared tail of the factory functions
  static RingPtr finish_extension(std::shared_ptr<DiffRing> r,
                                  const DerivCallback& derivs,
                                  std::size_t n_new);

  std::vector<Generator> gens_;
  std::vector<ElemData> loc_dens_;    // full-length dexp w.r.t. earlier layers
  std::vector<ElemData> gen_derivs_;  // δ of each generator
  RingPtr parent_;
  StepKind step_ = StepKind::Base;
  std::size_t first_own_gen_ = 0;

  mutable std::unique_ptr<FracModel> frac_model_;
  mutable std::vector<std::optional<ElemData>> dlog_den_cache_;
};

/// Lifts an element of an ancestor ring into a descendant tower ring.
RingElem promote(const RingElem& e, const RingPtr& target);

/// Writes an element of a tower ring as an element of an ancestor ring,
/// when its normal form only involves the ancestor's generators and
/// localization layers; nullopt otherwise.
std::optional<RingElem> try_restrict(const RingElem& e, const RingPtr& anc);

/// A differential ring homomorphism given by generator images.  The
/// differential property, monic relations and invertibility of localized
/// denominators are all checked at construction.
class RingHom {
 public:
  RingHom(RingPtr src, RingPtr dst, std::vector<RingElem> images);

  /// Inclusion of an ancestor ring into a tower built on it.
  static RingHom inclusion(const RingPtr& src, const RingPtr& dst);

  const RingPtr& source() const { return src_; }
  const RingPtr& target() const { return dst_; }
  const std::vector<RingElem>& images() const { return images_; }

  RingElem apply(const RingElem& e) const;
  RingHom compose_after(const RingHom& first) const;  // this ∘ first

 private:
  RingPtr src_, dst_;
  std::vector<RingElem> images_;
  std::vector<RingElem> loc_den_inv_images_;  // per src localization layer
};

/// B^{⊗m} over A, built by replaying the tower A -> B with per-copy
/// renamed generators ("name@k").  Provides coface maps and factor
/// embeddings as checked differential homomorphisms.
class Amalgam {
 public:
  /// cover must be (isomorphic to) the inclusion of A into a tower B.
  Amalgam(const RingHom& cover, std::size_t level);

  std::size_t level() const { return level_; }
  const RingPtr& ring() const { return ring_; }
  const RingPtr& base() const { return base_; }
  const RingPtr& cover_ring() const { return cover_ring_; }

  /// Factor embedding B -> B^{⊗m} into slot j (1-based).
  const RingHom& embedding(std::size_t j) const;
  /// Coface d_i : B^{⊗m} -> B^{⊗m+1}, i = 0..m, inserting a fresh factor
  /// so that old slot j lands at j if j <= i, else j+1.  Requires the
  /// level-(m+1) amalgam; build both and call coface_into.
  static RingHom coface(const Amalgam& from, const Amalgam& to,
                        std::size_t i);

 private:
  RingPtr base_, cover_ring_, ring_;
  std::size_t level_ = 1;
  std::vector<RingHom> embeddings_;
  // per copy k (0-based) and chain-ring generator index: target gen index
  std::vector<std::vector<std::size_t>> copy_gen_map_;
  friend RingHom amalgam_coface_impl(const Amalgam&, const Amalgam&,
                                     std::size_t);
};

/// Amalgam levels the boundary machinery uses (1..4; the public cap for
/// cochains and descent data is level 3).
Amalgam make_amalgam(const RingHom& cover, std::size_t level);

}  // namespace diffalg
