#pragma once

#include <cstdint>
#include <string>

#include "essmod/harness/generate.hpp"
#include "essmod/harness/serialize.hpp"

namespace essmod::harness {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

/// FNV-1a of the compact dump of `report` without "timing_ms" and "digest", as 16 hex digits.
std::string digest_of(const Json& report);
/// Adds "digest" to the report.
void seal(Json& report);

struct CommandResult {
  Json report;
  int exit_code = kExitPass;
};

Json cmd_gen(const GenOptions& opts);
/// Essentiality decision with certificate (ideals, submodules) or Y (fields).
CommandResult cmd_check(const Json& instance);

struct WitnessOptions {
  std::size_t samples = 8;
};
CommandResult cmd_witness(const Json& instance, const WitnessOptions& opts);

enum class Fault { None, ThetaNorm };
Fault parse_fault(const std::string& text);

struct SuiteOptions {
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  Fault fault = Fault::None;
  std::size_t threads = 0;  // 0: hardware concurrency
};
CommandResult cmd_suite(const SuiteOptions& opts);
/// Names of all suite properties, in run order.
std::vector<std::string> property_names();

}  // namespace essmod::harness
