#pragma once

#include "quoherence/scenario.hpp"

#include <iosfwd>
#include <string>

namespace quoherence {

/// Shortest round-trip decimal form ('.' separator, locale independent).
std::string format_double(double value);

/// CSV: "# scenario_hash: <hash>" then columns
/// x_m,intensity_exact,intensity_farfield,intensity_incoherent, one row per grid point.
void cmd_pattern(const Scenario& scenario, std::ostream& out, Exec exec = Exec::parallel);

/// Writes the JSON measurement report. Returns the process exit code: 0 iff
/// the measured duality relation holds within 3 standard errors.
int cmd_measure(const Scenario& scenario, std::ostream& out);

/// CSV with one row per sweep point, in sweep order.
void cmd_sweep(const Scenario& scenario, const SweepSpec& sweep, std::ostream& out);

/// Prints one line per invariant check. Returns 0 iff nothing failed
/// (warnings do not fail).
int cmd_validate(const nlohmann::json& doc, std::ostream& out);

}  // namespace quoherence
