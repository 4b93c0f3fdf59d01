#pragma once

#include "cpmu/groupoid.hpp"
#include "cpmu/linalg.hpp"
#include "cpmu/measure.hpp"
#include "cpmu/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cpmu {

enum class Command { check_groupoid, build_pmu, legs, hopf, report };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command c);

using DerivedValue = std::variant<std::int64_t, bool, double, std::string>;

/// Outcome of one pipeline run.  Check names are unique, derived quantities
/// keep insertion order, so rendering is byte-stable.
struct VerificationReport {
  std::string instance;
  Command command = Command::report;
  double tol = kDefaultTol;
  Report checks;
  std::vector<std::pair<std::string, DerivedValue>> derived;

  bool passed() const { return checks.passed(); }
  const DerivedValue* find_derived(const std::string& key) const;
};

/// Stages per command:
///   check-groupoid  axioms and measure
///   build-pmu       + construction of V, pentagon, intertwining, regularity
///   legs            + both legs, their properties and the groupoid identification
///   hopf            + pentagon frame and both Hopf C*-bimodule audits
///   report          all of the above, transport of the base algebras and V^op
/// Later stages are skipped once the groupoid axioms fail.  Numerical
/// preconditions that break inside a stage become failed checks.
VerificationReport run_pipeline(Command command, const std::string& instance,
                                const FiniteGroupoid& g, const HaarSystem& haar,
                                const std::vector<double>& unit_weights, double tol = kDefaultTol);

/// `timing` adds per-check wall times (the time of the stage that produced
/// the check), which makes the output non-deterministic.
std::string render_text(const VerificationReport& r, bool timing = false);
std::string render_json(const VerificationReport& r, bool timing = false);

}  // namespace cpmu
