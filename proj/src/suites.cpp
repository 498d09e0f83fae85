#include "diffalg/scenario.hpp"

namespace diffalg {

namespace {

const char* kIdentity = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "A", "type": "ring", "extends": "P", "steps": [
      {"step": "localize", "at": "x"}]},
    {"name": "B", "type": "ring", "extends": "A", "steps": [
      {"step": "monic", "var": "t", "coeffs": ["-x", "0"]}]},
    {"name": "E", "type": "ring", "extends": "P", "steps": [
      {"step": "adjoin", "vars": ["y"], "derivs": ["y"]}]}
  ],
  "checks": [
    {"name": "leibniz-base", "op": "leibniz", "ring": "P", "pairs": 25},
    {"name": "leibniz-localized", "op": "leibniz", "ring": "A", "pairs": 25},
    {"name": "leibniz-quotient", "op": "leibniz", "ring": "B", "pairs": 25},
    {"name": "leibniz-adjoined", "op": "leibniz", "ring": "E", "pairs": 25},
    {"name": "sqrt-derivative", "op": "derivative", "ring": "B", "expr": "t",
     "expect": {"value": "t/(2*x)"}},
    {"name": "inverse-derivative", "op": "derivative", "ring": "A",
     "expr": "1/x", "expect": {"value": "-1/x^2"}},
    {"name": "exponential-derivative", "op": "derivative", "ring": "E",
     "expr": "y^2", "expect": {"value": "2*y^2"}},
    {"name": "nonunit-inverse", "op": "eval", "ring": "P", "expr": "1/x",
     "expect": {"error": "NotAUnit"}}
  ]
})json";

const char* kMorita = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "M1", "type": "module", "ring": "P", "connection": [["0"]]},
    {"name": "M2", "type": "module", "ring": "P",
     "connection": [["0", "x"], ["0", "0"]]},
    {"name": "M3", "type": "module", "ring": "P",
     "connection": [["x", "1", "0"], ["0", "2*x", "x"], ["1", "0", "x"]]}
  ],
  "checks": [
    {"name": "morita-rank1", "op": "morita", "module": "M1"},
    {"name": "morita-rank2", "op": "morita", "module": "M2"},
    {"name": "morita-rank3", "op": "morita", "module": "M3"},
    {"name": "hom-tensor", "op": "hom_tensor_iso",
     "p": "M1", "q": "M2", "p2": "M2", "q2": "M1"}
  ]
})json";

const char* kWitness = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "A", "type": "ring", "extends": "P", "steps": [
      {"step": "localize", "at": "x"}]},
    {"name": "Z", "type": "matrix", "ring": "P",
     "entries": [["0", "1"], ["0", "0"]]},
    {"name": "ALG", "type": "algebra", "ring": "P", "witness": "Z"},
    {"name": "Zero2", "type": "matrix", "ring": "A",
     "entries": [["0", "0"], ["0", "0"]]},
    {"name": "TRIV", "type": "algebra", "ring": "A", "witness": "Zero2"}
  ],
  "checks": [
    {"name": "witness-roundtrip", "op": "inner_witness", "ring": "P",
     "witness": "Z"},
    {"name": "witness-corrupted", "op": "inner_witness", "ring": "P",
     "witness": "Z", "corrupt": [0, 1, 1, 1],
     "expect": {"error": "NotADerivation"}},
    {"name": "rho-bijective", "op": "rho", "algebra": "ALG"},
    {"name": "automorphism-scalar-diagonal", "op": "is_diff_automorphism",
     "src": "TRIV", "dst": "TRIV", "u": [["x", "0"], ["0", "x"]]},
    {"name": "automorphism-diag-1-x", "op": "is_diff_automorphism",
     "src": "TRIV", "dst": "TRIV", "u": [["1", "0"], ["0", "x"]],
     "expect": "fail"},
    {"name": "automorphism-shear", "op": "is_diff_automorphism",
     "src": "TRIV", "dst": "TRIV", "u": [["1", "x"], ["0", "1"]],
     "expect": "fail"}
  ]
})json";

const char* kTrivialization = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "M1", "type": "module", "ring": "P", "connection": [["x"]]},
    {"name": "M2", "type": "module", "ring": "P",
     "connection": [["0", "x"], ["0", "0"]]},
    {"name": "Z", "type": "matrix", "ring": "P",
     "entries": [["0", "1"], ["0", "0"]]},
    {"name": "ALG", "type": "algebra", "ring": "P", "witness": "Z"}
  ],
  "checks": [
    {"name": "module-rank1", "op": "trivialize_module", "module": "M1"},
    {"name": "module-rank2", "op": "trivialize_module", "module": "M2"},
    {"name": "algebra-n2", "op": "trivialize_algebra", "algebra": "ALG"}
  ]
})json";

const char* kDln = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "A", "type": "ring", "extends": "P", "steps": [
      {"step": "localize", "at": "x"}]},
    {"name": "B", "type": "ring", "extends": "A", "steps": [
      {"step": "monic", "var": "t", "coeffs": ["-x", "0"]}]}
  ],
  "checks": [
    {"name": "dlog-x", "op": "dlog", "ring": "A", "expr": "x",
     "expect": {"value": "1/x"}},
    {"name": "dlog-constant", "op": "dlog", "ring": "A", "expr": "5",
     "expect": {"value": "0"}},
    {"name": "dlog-nonunit", "op": "dlog", "ring": "A", "expr": "x+1",
     "expect": {"error": "NotAUnit"}},
    {"name": "additivity-base", "op": "dlog_additivity", "ring": "A",
     "units": ["3", "x", "2*x^2", "1/x", "5/x^3", "x^4", "7", "1/(3*x)"]},
    {"name": "additivity-cover", "op": "dlog_additivity", "ring": "B",
     "units": ["t", "x*t", "2/x", "t^3", "1/t"]},
    {"name": "exp-cover-0", "op": "exp_cover_dlog", "ring": "P", "b": "0"},
    {"name": "exp-cover-1", "op": "exp_cover_dlog", "ring": "P", "b": "1"},
    {"name": "exp-cover-x", "op": "exp_cover_dlog", "ring": "P", "b": "x"}
  ]
})json";

const char* kDescent = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "A", "type": "ring", "extends": "P", "steps": [
      {"step": "localize", "at": "x"}]},
    {"name": "B", "type": "ring", "extends": "A", "steps": [
      {"step": "monic", "var": "t", "coeffs": ["-x", "0"]}]},
    {"name": "T", "type": "tower", "base": "A", "cover": "B"},
    {"name": "BB", "type": "amalgam", "tower": "T", "level": 2},
    {"name": "J", "type": "matrix", "ring": "BB",
     "entries": [["0", "-1"], ["1", "0"]]},
    {"name": "JT", "type": "matrix", "transpose": "J"},
    {"name": "JINV", "type": "matrix", "inverse": "J"},
    {"name": "CONJ", "type": "matrix", "kron": ["JT", "JINV"]},
    {"name": "I4", "type": "matrix", "ring": "BB", "identity": 4},
    {"name": "P1I", "type": "matrix",
     "scale": {"matrix": "I4", "by": "(1 + t@1*t@2/x)/2"}},
    {"name": "P2C", "type": "matrix",
     "scale": {"matrix": "CONJ", "by": "(1 - t@1*t@2/x)/2"}},
    {"name": "PHI", "type": "matrix", "sum": ["P1I", "P2C"]},
    {"name": "I2", "type": "matrix", "ring": "BB", "identity": 2},
    {"name": "P1I2", "type": "matrix",
     "scale": {"matrix": "I2", "by": "(1 + t@1*t@2/x)/2"}},
    {"name": "P2J", "type": "matrix",
     "scale": {"matrix": "JINV", "by": "(1 - t@1*t@2/x)/2"}},
    {"name": "LIFT", "type": "matrix", "sum": ["P1I2", "P2J"]},
    {"name": "N4", "type": "module", "ring": "B", "connection": [
      ["0", "0", "0", "0"], ["0", "0", "0", "0"],
      ["0", "0", "0", "0"], ["0", "0", "0", "0"]]},
    {"name": "N1", "type": "module", "ring": "B", "connection": [["0"]]},
    {"name": "M2A", "type": "module", "ring": "A",
     "connection": [["0", "0"], ["0", "0"]]},
    {"name": "Z2A", "type": "matrix", "ring": "A",
     "entries": [["0", "0"], ["0", "0"]]},
    {"name": "Q", "type": "datum", "tower": "T", "module": "N4",
     "phi": "PHI", "kind": "algebra"},
    {"name": "CAN", "type": "datum", "tower": "T", "module": "M2A",
     "kind": "module", "canonical": true},
    {"name": "TW", "type": "datum", "tower": "T", "module": "N1",
     "phi": [["t@1/t@2"]], "kind": "module"},
    {"name": "BAD", "type": "datum", "tower": "T", "module": "N1",
     "phi": [["2"]], "kind": "module"}
  ],
  "checks": [
    {"name": "quaternion-cocycle", "op": "cocycle", "datum": "Q"},
    {"name": "twist-cocycle", "op": "cocycle", "datum": "TW"},
    {"name": "non-cocycle", "op": "cocycle", "datum": "BAD",
     "expect": "fail"},
    {"name": "canonical-descends", "op": "descend_module", "datum": "CAN",
     "connection": "Z2A"},
    {"name": "twist-descends", "op": "descend_module", "datum": "TW"},
    {"name": "quaternion-descends", "op": "descend_algebra", "datum": "Q"},
    {"name": "bad-rejected", "op": "descend_module", "datum": "BAD",
     "expect": {"error": "CocycleFailed"}},
    {"name": "conjugation-extracted", "op": "pgl_cocycle", "datum": "Q",
     "equals": "LIFT"}
  ]
})json";

const char* kBoundary = R"json({
  "declarations": [
    {"name": "P", "type": "ring", "steps": [
      {"step": "base", "vars": ["x"], "derivs": ["1"]}]},
    {"name": "A", "type": "ring", "extends": "P", "steps": [
      {"step": "localize", "at": "x"}]},
    {"name": "B", "type": "ring", "extends": "A", "steps": [
      {"step": "monic", "var": "t", "coeffs": ["-x", "0"]}]},
    {"name": "T", "type": "tower", "base": "A", "cover": "B"},
    {"name": "BB", "type": "amalgam", "tower": "T", "level": 2},
    {"name": "J", "type": "matrix", "ring": "BB",
     "entries": [["0", "-1"], ["1", "0"]]},
    {"name": "JINV", "type": "matrix", "inverse": "J"},
    {"name": "I2", "type": "matrix", "ring": "BB", "identity": 2},
    {"name": "P1I2", "type": "matrix",
     "scale": {"matrix": "I2", "by": "(1 + t@1*t@2/x)/2"}},
    {"name": "P2J", "type": "matrix",
     "scale": {"matrix": "JINV", "by": "(1 - t@1*t@2/x)/2"}},
    {"name": "LIFT", "type": "matrix", "sum": ["P1I2", "P2J"]},
    {"name": "LIFTT", "type": "matrix", "transpose": "LIFT"},
    {"name": "LIFTOP", "type": "matrix", "inverse": "LIFTT"},
    {"name": "LIFT2", "type": "matrix",
     "scale": {"matrix": "LIFT", "by": "t@1*t@2"}},
    {"name": "M1", "type": "matrix", "ring": "BB",
     "entries": [["t@1/t@2"]]},
    {"name": "U0", "type": "matrix", "ring": "B",
     "entries": [["t", "0"], ["1", "1"]]},
    {"name": "c0u", "type": "cochain", "tower": "T", "degree": 0,
     "kind": "units", "value": "t"},
    {"name": "a0", "type": "cochain", "tower": "T", "degree": 0,
     "kind": "additive", "value": "t"},
    {"name": "cp0", "type": "cochain", "tower": "T", "degree": 0,
     "kind": "pgl", "matrix": "U0"},
    {"name": "cq", "type": "cochain", "tower": "T", "degree": 1,
     "kind": "pgl", "matrix": "LIFT"},
    {"name": "cop", "type": "cochain", "tower": "T", "degree": 1,
     "kind": "pgl", "matrix": "LIFTOP"},
    {"name": "c1", "type": "cochain", "tower": "T", "degree": 1,
     "kind": "pgl", "matrix": "M1"},
    {"name": "sgn", "type": "cochain", "tower": "T", "degree": 1,
     "kind": "units", "value": "t@1/t@2"}
  ],
  "checks": [
    {"name": "dd-units", "op": "cech_dd", "cochain": "c0u"},
    {"name": "dd-additive", "op": "cech_dd", "cochain": "a0"},
    {"name": "dd-projective", "op": "cech_dd", "cochain": "cp0"},
    {"name": "sign-cocycle", "op": "is_cocycle", "cochain": "sgn"},
    {"name": "quaternion-boundary", "op": "boundary2", "cochain": "cq",
     "lift": "LIFT", "differential": true},
    {"name": "abelian-boundary", "op": "boundary2", "cochain": "c1",
     "lift": "M1"},
    {"name": "mismatched-lift", "op": "boundary2", "cochain": "cq",
     "lift": "I2", "expect": {"error": "LiftMismatch"}},
    {"name": "lift-independence", "op": "lift_independence", "cochain": "cq",
     "lift1": "LIFT", "lift2": "LIFT2"},
    {"name": "additivity-opposite", "op": "boundary_additivity",
     "cm": "cq", "lift_m": "LIFT", "cn": "cop", "lift_n": "LIFTOP"}
  ]
})json";

}  // namespace

const std::vector<std::pair<std::string, std::string>>& bundled_suites() {
  static const std::vector<std::pair<std::string, std::string>> suites = {
      {"identity", kIdentity},       {"morita", kMorita},
      {"witness", kWitness},         {"trivialization", kTrivialization},
      {"dln", kDln},                 {"descent", kDescent},
      {"boundary", kBoundary},
  };
  return suites;
}

}  // namespace diffalg
