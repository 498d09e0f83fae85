#pragma once

#include <memory>
#include <vector>

#include "diffalg/dmod.hpp"
#include "diffalg/matrix.hpp"
#include "diffalg/ring.hpp"

namespace diffalg {

/// A cover A→B together with its amalgam levels 1..3 and all coface maps,
/// built once and shared by descent data and cochains.
class CoverTower {
 public:
  static std::shared_ptr<const CoverTower> make(const RingHom& cover);

  const RingHom& cover() const { return cover_; }
  const RingPtr& base() const { return cover_.source(); }
  /// B^{⊗m}, m = 1..3.
  const RingPtr& level(std::size_t m) const;
  const Amalgam& amalgam(std::size_t m) const;
  /// Coface d_i : B^{⊗m} → B^{⊗m+1} (i = 0..m).
  const RingHom& coface(std::size_t m, std::size_t i) const;
  /// Factor embedding B → B^{⊗m} into slot j (1-based).
  const RingHom& embedding(std::size_t m, std::size_t j) const;

 private:
  explicit CoverTower(const RingHom& cover);
  RingHom cover_;
  std::vector<Amalgam> amalgams_;              // levels 1..3
  std::vector<std::vector<RingHom>> cofaces_;  // [m-1][i]
};

using TowerPtr = std::shared_ptr<const CoverTower>;

enum class DatumKind { Module, Algebra };

/// Descent datum (N, φ): N free over B, φ an invertible matrix over B⊗B
/// giving N⊗B → B⊗N in the two factor-embedding bases.  φ is required to
/// intertwine the two induced derivations; algebra data must additionally
/// act multiplicatively on M_n.
class DescentDatum {
 public:
  DescentDatum(TowerPtr tower, DiffModule module, Mat phi, DatumKind kind);

  /// The identity datum of M⊗B for a module M over the base.
  static DescentDatum canonical(const TowerPtr& tower, const DiffModule& m,
                                DatumKind kind);

  const TowerPtr& tower() const { return tower_; }
  const DiffModule& module() const { return mod_; }
  const Mat& phi() const { return phi_; }
  DatumKind kind() const { return kind_; }

  /// φ₁₃ = φ₂₃·φ₁₂ over B^{⊗3}, exactly.
  bool cocycle_check() const;

 private:
  TowerPtr tower_;
  DiffModule mod_;
  Mat phi_;
  DatumKind kind_;
};

struct DescendedModule {
  Mat basis;       // n×n over B; column k holds the coordinates of g_k
  Mat connection;  // n×n over the base: δ(g_k) = Σ_l C_{lk} g_l
};

/// Solves φ(1⊗x) = x⊗1 for x ranging over N, producing an A-basis of the
/// descended module G and its connection.  Requires B monic-free over A.
DescendedModule descend_module(const DescentDatum& d);

struct DescendedAlgebra {
  std::vector<Mat> basis;  // n×n matrices over B spanning G over the base
  // g_a·g_b = Σ_c sc[a][b][c]·g_c, δ(g_a) = Σ_c dtab[a][c]·g_c, over A
  std::vector<std::vector<std::vector<RingElem>>> sc;
  std::vector<std::vector<RingElem>> dtab;
  std::vector<RingElem> unit;  // 1 = Σ_c unit[c]·g_c
};

DescendedAlgebra descend_algebra(const DescentDatum& d);

/// Exact test for the morphism condition (B⊗α)∘φ = φ'∘(α⊗B), with α also
/// required to be differential for the two module structures.
bool twisted_form_equiv(const DescentDatum& d, const DescentDatum& d2,
                        const Mat& alpha);

}  // namespace diffalg
