#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace roofs {

struct PropertyTally {
  std::string name;
  int passed = 0;
  int failed = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyTally> properties;
  /// Extra deterministic lines (interpretation grids, resolved readings).
  std::vector<std::string> notes;

  int failures() const;
};

/// Suites: wootters, subtraction, diagonal, bounds, all. Trial k of a suite
/// draws from derive_seed(derive_seed(seed, suite index), k); trials run in
/// parallel and are tallied in index order.
std::vector<SuiteReport> run_verify(const std::string& suite, int trials, std::uint64_t seed);

std::string format_reports(const std::vector<SuiteReport>& reports);

bool is_known_suite(const std::string& suite);

}  // namespace roofs
