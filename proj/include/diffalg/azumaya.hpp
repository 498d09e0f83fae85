#pragma once

#include <vector>

#include "diffalg/dmod.hpp"
#include "diffalg/matrix.hpp"
#include "diffalg/ring.hpp"

namespace diffalg {

/// M_n over a differential ring with derivation Δ(x) = x' + z·x − x·z for a
/// trace-zero witness matrix z.
class DiffMatrixAlgebra {
 public:
  DiffMatrixAlgebra(RingPtr ring, std::size_t n, Mat z);

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return n_; }
  const Mat& z() const { return z_; }

  Mat delta(const Mat& x) const;

  /// Opposite algebra on the transpose model: witness −zᵀ.
  DiffMatrixAlgebra opposite() const;
  /// Kronecker product algebra, witness z⊗I + I⊗z'.
  DiffMatrixAlgebra tensor_alg(const DiffMatrixAlgebra& o) const;

  /// Same witness viewed in a descendant tower ring.
  DiffMatrixAlgebra base_change(const RingPtr& target) const;

 private:
  RingPtr ring_;
  std::size_t n_;
  Mat z_;
};

DiffMatrixAlgebra matrix_algebra(const RingPtr& r, std::size_t n,
                                 const Mat& z);

/// Recovers the unique trace-zero z with values[i][j] = [z, e_ij] from a
/// full value table of an A-linear derivation on matrix units.  Rejects
/// tables that break Leibniz or scalar-vanishing (NotADerivation) and
/// tables with no commutator solution (NoSolution).
Mat inner_witness(const RingPtr& r, std::size_t n,
                  const std::vector<std::vector<Mat>>& values);

/// True iff x ↦ u·x·u⁻¹ intertwines the two derivations, i.e. iff
/// u⁻¹·(u' + z_dst·u − u·z_src) is a scalar matrix.
bool is_diff_automorphism(const DiffMatrixAlgebra& src,
                          const DiffMatrixAlgebra& dst, const Mat& u);

/// Verifies λ₁⊗λ₂ ↦ (λ ↦ λ₁λλ₂) is a differential bijection onto End(Λ).
CheckReport rho_check(const DiffMatrixAlgebra& alg);

/// A δ-flat extension built over a ring by adjoin/localize steps, together
/// with the inclusion map and the names of the adjoined generators.
struct Cover {
  RingHom incl;
  std::vector<std::string> adjoined;

  const RingPtr& ring() const { return incl.target(); }
};

struct ModuleTrivialization {
  Cover cover;
  Mat basis;  // columns are δ-constant vectors of M over the cover
};

/// Cover R[T_ij][det T⁻¹] with δT = −D·T; the columns of T form a
/// δ-constant basis of the extended module.
ModuleTrivialization trivialize_module(const DiffModule& m);

struct AlgebraTrivialization {
  Cover cover;
  Mat u;  // conjugation by u carries Δ to the coordinatewise derivation
};

/// Cover R[U_ij][det U⁻¹] with δU = U·z; conjugation by U is a differential
/// isomorphism from Λ over the cover onto (M_n, ').
AlgebraTrivialization trivialize_algebra(const DiffMatrixAlgebra& alg);

struct ExpCover {
  Cover cover;
  RingElem u;  // unit with δu = b·u
};

/// R[U, U⁻¹] with δU = b·U, the formal exponential of b.
ExpCover exp_cover(const RingPtr& r, const RingElem& b);

}  // namespace diffalg
