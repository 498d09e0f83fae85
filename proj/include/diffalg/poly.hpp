#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "diffalg/rational.hpp"

namespace diffalg {

/// Exponent vector with trailing zeros trimmed.  Variable i of the ambient
/// ring corresponds to slot i.
struct Monomial {
  std::vector<uint32_t> exp;

  static Monomial one() { return Monomial{}; }
  static Monomial var(std::size_t i, uint32_t e = 1);

  uint32_t deg_in(std::size_t i) const {
    return i < exp.size() ? exp[i] : 0;
  }
  uint32_t total_degree() const;
  bool is_one() const { return exp.empty(); }

  Monomial operator*(const Monomial& o) const;
  /// Componentwise quotient; returns false if o does not divide *this.
  bool try_divide(const Monomial& o, Monomial& out) const;

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool operator<(const Monomial& o) const;  // graded lex

  void trim();
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Stored in canonical form: no zero coefficients, ordered monomials.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rat& c);
  static Poly var(std::size_t i, uint32_t e = 1);
  static Poly monomial(const Monomial& m, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the whole value when is_constant()).
  Rat constant_value() const;

  uint32_t degree_in(std::size_t var) const;
  uint32_t total_degree() const;
  std::size_t num_terms() const { return terms_.size(); }
  /// Largest variable index occurring, or -1 if constant.
  long max_var() const;

  const std::map<Monomial, Rat>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly pow(uint32_t e) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Formal partial derivative with respect to variable var.
  Poly formal_derivative(std::size_t var) const;

  /// Splits into Σ coeff_k · var^k, coefficients free of var.
  std::map<uint32_t, Poly> coeffs_in(std::size_t var) const;

  /// Renames variables through idx_map (old index -> new index).
  Poly rename_vars(const std::vector<std::size_t>& idx_map) const;

  /// Exact multivariate division: *this == q * d with no remainder.
  /// Returns false (q unspecified) if d does not divide exactly.
  bool try_exact_divide(const Poly& d, Poly& q) const;

  /// Divides every coefficient by the gcd of numerators / lcm of
  /// denominators; returns the extracted rational factor (0 for zero poly).
  Rat extract_content();

  void add_term(const Monomial& m, const Rat& c);

  std::string to_string(
      const std::function<std::string(std::size_t)>& var_name) const;

 private:
  std::map<Monomial, Rat> terms_;
};

/// Univariate gcd in the single variable var (all other slots must be
/// unused in both arguments); result is monic.
Poly gcd_univariate(const Poly& a, const Poly& b, std::size_t var);

}  // namespace diffalg
