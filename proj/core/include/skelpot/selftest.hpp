#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace skelpot {

struct CheckOutcome {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::vector<std::string> witnesses;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::string inputs_digest;  // FNV-1a over the serialized generated inputs
  std::vector<CheckOutcome> results;
  std::vector<std::pair<std::string, double>> timings;  // seconds, only when requested

  bool passed() const;
};

// Runs a reduced battery of every property check on a corpus drawn from
// `seed`. Deterministic except for the optional timings.
RunReport run_selftest(std::uint64_t seed, bool with_timings = false);

nlohmann::json to_json(const RunReport& report);

}  // namespace skelpot
