#ifndef EULERFV_COMMANDS_HPP
#define EULERFV_COMMANDS_HPP

#include <string>

#include "eulerfv/config.hpp"

namespace efv {

// Single run; writes field snapshots and the energy ledger.
void cmd_solve(const RunConfig& cfg);

// Full refinement study; writes the result directory, returns the label.
Classification cmd_study(const RunConfig& cfg);

// Weak-form residual refinement study; needs at least 2 levels.
void cmd_consistency(const RunConfig& cfg);

// Single run, then per-step energy balance verdicts.
struct AuditSummary {
  std::size_t steps = 0;
  std::size_t failures = 0;
};
AuditSummary cmd_audit(const RunConfig& cfg);

struct SelftestResult {
  int total = 0;
  int failed = 0;
  std::string report;
};
SelftestResult selftest();

} // namespace efv

#endif
