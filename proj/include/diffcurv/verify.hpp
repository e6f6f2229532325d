#pragma once

// The one-shot verification suite: every closed-form value, identity,
// sign certificate, conservation law and stability diagnostic the library
// reproduces, as named checks with pinned tolerances.  The CLI `verify`
// command and the acceptance test binary both run this.

#include <optional>
#include <string>
#include <vector>

namespace diffcurv {

struct Check {
  std::string id;         // stable identifier, e.g. "circle-family"
  std::string statement;  // what the check asserts
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;     // measured values, notes, known discrepancies
};

struct VerifyOptions {
  std::string only;                      // run only ids starting with this
  std::optional<double> tol_override;    // replace every tolerance
  unsigned seed = 20240614;              // randomized-check seed
};

struct VerifyReport {
  std::vector<Check> checks;
  double seconds = 0.0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

VerifyReport run_verification(const VerifyOptions& opts = {});

std::string report_to_json(const VerifyReport& report);
std::string report_to_table(const VerifyReport& report);

}  // namespace diffcurv
