#pragma once

// Problem files, result JSON and the command dispatcher behind the orbitope CLI.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orbitope/lie_core.hpp"

namespace orbitope::io {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

struct ProblemFile {
  std::string family;
  int n = 1;
  std::vector<double> f;
  std::optional<std::vector<double>> a;
  std::optional<std::vector<double>> y;
  std::optional<double> eta;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  std::int64_t mc_samples = 100000;

  GroupSpec spec() const;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

/// Parses and validates a problem; throws orbitope::Error with a parse-class
/// code (MALFORMED_JSON, UNKNOWN_FIELD, MISSING_FIELD, UNKNOWN_FAMILY, ...).
ProblemFile parse_problem(std::string_view text);

/// Re-runs the checks parse_problem applies, for problems built in code.
void validate_problem(const ProblemFile& problem);

nlohmann::json to_json(const ProblemFile& problem);
/// Canonical compact JSON; parse_problem(serialize_problem(p)) == p.
std::string serialize_problem(const ProblemFile& problem);

/// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string input_hash(const ProblemFile& problem);

inline constexpr std::string_view kCommands[] = {"solve", "integrate", "gradient",
                                                 "membership", "validate", "sample-orbit"};

/// Runs one command and returns its result document. Module errors propagate
/// as orbitope::Error.
nlohmann::json run_command(std::string_view command, const ProblemFile& problem);

}  // namespace orbitope::io
