#pragma once

#include <string>
#include <vector>

#include "diffalg/matrix.hpp"
#include "diffalg/ring.hpp"

namespace diffalg {

/// Free differential module of finite rank: δ(e_j) = Σ_i D_{ij} e_i, so a
/// coordinate column v differentiates to v' + D·v.
class DiffModule {
 public:
  DiffModule(RingPtr ring, Mat connection);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return conn_.rows(); }
  const Mat& connection() const { return conn_; }

  /// δ of a coordinate column (given as an n×1 matrix or a vector).
  Mat apply_delta(const Mat& v) const;
  std::vector<RingElem> apply_delta(const std::vector<RingElem>& v) const;

  DiffModule tensor(const DiffModule& o) const;
  DiffModule dual() const;
  /// Hom(*this, o) on the matrix-unit basis; a map matrix g differentiates
  /// to g' + D_target·g − g·D_source.
  DiffModule hom(const DiffModule& o) const;

  /// δ of a map matrix g : *this -> o under the Hom structure.
  Mat map_delta(const DiffModule& o, const Mat& g) const;

 private:
  RingPtr ring_;
  Mat conn_;
};

DiffModule free_module(const RingPtr& r, const Mat& connection);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

/// Verifies that f⊗f' ↦ (p⊗p' ↦ f(p)⊗f'(p')) is a differential map
/// Hom(P,Q)⊗Hom(P',Q') → Hom(P⊗P', Q⊗Q') on all basis elements.
CheckReport hom_tensor_iso_check(const DiffModule& p, const DiffModule& q,
                                 const DiffModule& p2, const DiffModule& q2);

/// Verifies the Morita package for a free module P: End(P) with the induced
/// derivation, the evaluation pairings in both orders, and Leibniz for
/// composition on matrix units.
CheckReport morita_check(const DiffModule& p);

}  // namespace diffalg
