#pragma once

#include <map>
#include <optional>
#include <vector>

#include "diffalg/poly.hpp"
#include "diffalg/ring.hpp"

namespace diffalg {

/// Quotient of two polynomials, used as the scalar field K for linear
/// algebra over a ring's fraction model.  Normalization is heuristic
/// (content, exact division, univariate gcd); equality never depends on it.
struct Frac {
  Poly num;
  Poly den = Poly::constant(1);

  static Frac of(const Poly& p) { return Frac{p, Poly::constant(1)}; }
  static Frac constant(const Rat& c) { return of(Poly::constant(c)); }

  bool is_zero() const { return num.is_zero(); }
  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator-() const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  bool operator==(const Frac& o) const;

  void normalize();
};

/// Element of K[monic vars]/(relations): polynomial over all ring
/// variables with a single denominator polynomial in the free variables.
struct TElem {
  Poly num;
  Poly den = Poly::constant(1);
};

/// Computable model of a tower ring: the finite-dimensional algebra over
/// the rational-function field of its free (polynomial) generators, with
/// the monic generators as a monomial basis.  Backs unit testing,
/// inversion and kernel computations.
class FracModel {
 public:
  explicit FracModel(const DiffRing& ring);

  const std::vector<std::size_t>& monic_vars() const { return monic_vars_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  TElem to_telem(const ElemData& e) const;
  void reduce(TElem& t) const;
  TElem mul(const TElem& a, const TElem& b) const;
  TElem add(const TElem& a, const TElem& b) const;

  /// Coordinates over the monic monomial basis, as K-scalars.
  std::vector<Frac> coords(const TElem& t) const;
  TElem from_coords(const std::vector<Frac>& c) const;

  /// Back-conversion; fails (nullopt) when a denominator is not a unit
  /// expressible through the ring's localization layers.
  std::optional<ElemData> frac_to_elem(const Frac& f) const;
  std::optional<ElemData> to_elem(const TElem& t) const;

  /// Inverse of a polynomial in the free variables, when it is a unit of
  /// the ring (a constant times a divisor of a product of localization
  /// denominators).
  std::optional<ElemData> poly_unit_inverse(const Poly& q) const;

  std::optional<ElemData> inverse(const ElemData& a) const;

 private:
  const TElem& rel_rest_telem(std::size_t monic_pos) const;
  const TElem& loc_inv_telem(std::size_t layer) const;

  const DiffRing& ring_;
  std::vector<std::size_t> poly_vars_, monic_vars_;
  std::vector<uint32_t> monic_deg_;              // parallel to monic_vars_
  std::vector<long> monic_pos_of_var_;           // var index -> pos or -1
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> basis_index_;
  mutable std::vector<std::optional<TElem>> rel_rest_cache_;
  mutable std::vector<std::optional<TElem>> loc_inv_cache_;
};

using FracMatrix = std::vector<std::vector<Frac>>;

/// Solves M x = b exactly; nullopt if inconsistent.  When the system is
/// underdetermined an arbitrary solution (free unknowns = 0) is returned.
std::optional<std::vector<Frac>> solve_linear(FracMatrix m,
                                              std::vector<Frac> b);

/// Basis of the kernel of M.
std::vector<std::vector<Frac>> kernel_basis(FracMatrix m);

}  // namespace diffalg
