#pragma once

#include <optional>
#include <vector>

#include "diffalg/ring.hpp"

namespace diffalg {

/// Dense matrix over a DiffRing.  Row-major; all entries share the ring.
class Mat {
 public:
  Mat() = default;
  Mat(RingPtr ring, std::size_t rows, std::size_t cols);

  static Mat identity(const RingPtr& r, std::size_t n);
  static Mat zero(const RingPtr& r, std::size_t rows, std::size_t cols);
  /// e_ij (1 in row i, column j; 0-based).
  static Mat unit(const RingPtr& r, std::size_t n, std::size_t i,
                  std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }

  RingElem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const RingElem& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Mat operator*(const RingElem& s) const;
  Mat operator*(const Rat& s) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool is_zero() const;

  Mat transpose() const;
  Mat kron(const Mat& o) const;
  RingElem trace() const;
  /// Entrywise application of the ring derivation.
  Mat d() const;
  /// Commutator [*this, o].
  Mat commutator(const Mat& o) const;

  RingElem det() const;
  /// Adjugate/determinant inverse; nullopt if det is not a unit.
  std::optional<Mat> inverse() const;

  /// The scalar c when the matrix equals c·I; nullopt otherwise.
  std::optional<RingElem> as_scalar() const;

  /// Entrywise image under a ring hom (shape preserved).
  Mat map(const RingHom& h) const;
  /// Entrywise promotion into a descendant tower ring.
  Mat promote_to(const RingPtr& target) const;

  /// Column-stacking vec: column j of an n×m matrix occupies rows
  /// j·n .. j·n+n−1 of the result.
  std::vector<RingElem> vec() const;
  static Mat unvec(const RingPtr& r, const std::vector<RingElem>& v,
                   std::size_t rows, std::size_t cols);

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RingElem> a_;
};

/// Solves a linear system with exact rational coefficient matrix and
/// ring-element right-hand side (used where the unknowns are ring elements
/// entering linearly with constant coefficients).  Underdetermined systems
/// get zeros in the free unknowns; nullopt when inconsistent.
std::optional<std::vector<RingElem>> solve_rat_system(
    std::vector<std::vector<Rat>> m, std::vector<RingElem> b,
    const RingPtr& ring);

}  // namespace diffalg
