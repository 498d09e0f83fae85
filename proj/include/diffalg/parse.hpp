#pragma once

#include <map>
#include <string>
#include <vector>

#include "diffalg/ring.hpp"

namespace diffalg {

/// Parses an arithmetic expression over the generators of R.
/// Grammar: + - * / ^ ( ), integer and a/b rational literals, identifiers
/// (letters, digits, _, @).  '/' multiplies by the ring inverse of the right
/// operand and reports NotAUnit when there is none.  '^' takes a nonnegative
/// integer exponent.  Unknown identifiers raise UnknownVariable; any other
/// malformed input raises ParseError.
RingElem parse_expr(const RingPtr& r, const std::string& text);

/// String-level tower factories: derivative and coefficient expressions are
/// parsed against the ring under construction (so new variables are usable
/// on the right-hand sides).
RingPtr make_base(const std::vector<std::string>& vars,
                  const std::map<std::string, std::string>& derivs);
RingPtr make_adjoin(const RingPtr& parent,
                    const std::vector<std::string>& vars,
                    const std::map<std::string, std::string>& derivs);
RingPtr make_localize(const RingPtr& parent, const std::string& f_expr);
/// parent[t]/(t^deg + coeffs[deg-1]·t^{deg-1} + ... + coeffs[0]); the
/// coefficient expressions are parsed over the parent.
RingPtr make_monic_quotient(const RingPtr& parent, const std::string& var,
                            const std::vector<std::string>& coeffs);

}  // namespace diffalg
