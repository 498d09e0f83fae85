#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace diffalg {

struct CheckRecord {
  std::string name;
  std::string op;
  std::string outcome;   // "pass", "fail", "error:<Kind>", or "value:<expr>"
  std::string expected;  // same grammar
  bool matched = false;
  double elapsed_ms = 0.0;
};

struct Report {
  std::vector<CheckRecord> checks;

  bool all_matched() const;
  /// 0 when every check matched its expectation, 1 otherwise.
  int exit_status() const { return all_matched() ? 0 : 1; }
  std::string render_text() const;
  /// Deterministic machine-readable body: no timings, fixed field order.
  std::string render_machine() const;
};

/// Runs a scenario given as JSON text.  Raises ParseError for malformed
/// JSON and DeclarationError for bad declarations or dangling references.
Report run_scenario_text(const std::string& json_text, uint64_t seed);
Report run_scenario_file(const std::string& path, uint64_t seed);

/// The bundled example suites, in fixed order: (suite name, scenario JSON).
const std::vector<std::pair<std::string, std::string>>& bundled_suites();

/// Runs all bundled suites (or just `only` when nonempty); check names are
/// prefixed with "<suite>/".  Unknown suite names raise ParseError.
Report run_examples(const std::string& only, uint64_t seed);

}  // namespace diffalg
