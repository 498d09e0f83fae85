#pragma once

#include "diffalg/descent.hpp"
#include "diffalg/matrix.hpp"

namespace diffalg {

enum class SheafKind { Units, ConstantUnits, Additive, ProjectiveLinear };

/// Čech m-cochain of a cover with values in units, δ-constant units, the
/// additive sheaf, or invertible matrices modulo scalars.  The value lives
/// over B^{⊗m+1}.
class Cochain {
 public:
  Cochain(TowerPtr tower, std::size_t degree, SheafKind kind, RingElem value);
  Cochain(TowerPtr tower, std::size_t degree, Mat value);  // ProjectiveLinear

  const TowerPtr& tower() const { return tower_; }
  std::size_t degree() const { return degree_; }
  SheafKind kind() const { return kind_; }
  const RingElem& scalar() const;
  const Mat& matrix() const;

  /// Identity cochain of the same shape (1, 0, or I).
  bool is_identity() const;

 private:
  TowerPtr tower_;
  std::size_t degree_;
  SheafKind kind_;
  RingElem scalar_;
  Mat matrix_;
};

/// Alternating coface differential: multiplicative d₀·d₂·d₁⁻¹ in degree 1
/// (e₀·e₁⁻¹ in degree 0), alternating sum for the additive sheaf.
Cochain cech_d(const Cochain& c);

bool is_cocycle(const Cochain& c);
bool is_coboundary(const Cochain& c, const Cochain& candidate);

/// δ(u)/u; NotAUnit when u is not invertible.
RingElem dlog(const RingElem& u);

/// Extracts the conjugating matrix of an algebra descent datum as a
/// ProjectiveLinear 1-cochain; NotConjugation when φ is not conjugation by
/// any invertible matrix over B⊗B.
Cochain pgl_cocycle_from_descent(const DescentDatum& d);

struct TwoCocycle {
  TowerPtr tower;
  RingElem value;  // scalar unit over B^{⊗3}
  bool constant_kind = false;
  bool degree2_identity_ok = false;
};

/// ∂²: w = lift₁₃⁻¹·lift₂₃·lift₁₂, verified scalar, with the degree-2
/// cocycle identity checked over B^{⊗4}.  The differential variant demands
/// a lift with lift⁻¹·δ(lift) scalar and produces a δ-constant value.
TwoCocycle boundary2(const Cochain& c, const Mat& lift,
                     bool differential_variant = false);

/// Two lifts of one cocycle differ by a scalar cochain s; verifies
/// w₂·w₁⁻¹ = ∂(s).
CheckReport lift_independence_check(const Cochain& c, const Mat& lift1,
                                    const Mat& lift2);

/// ∂² of a Kronecker product is the product of the ∂²'s.
CheckReport boundary_additivity_check(const Cochain& cm, const Mat& lift_m,
                                      const Cochain& cn, const Mat& lift_n);

}  // namespace diffalg
