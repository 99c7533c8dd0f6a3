#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "harmlab/funcexpr.hpp"

namespace harmlab {

/// One verified identity.
struct Record {
  std::string id;
  std::string inputs_digest;
  complexd lhs{};
  complexd rhs{};
  double residual = 0.0;
  double tolerance = 0.0;
  double tail_bound = 0.0;
  double wall_time_ms = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

struct Report {
  std::string tool_version;
  nlohmann::json config_echo;
  std::vector<Record> records;

  int total() const { return int(records.size()); }
  int passed() const;
  bool all_pass() const { return passed() == total(); }
  /// strip_timing zeroes the wall_time fields, for byte-comparison.
  nlohmann::json to_json(bool strip_timing = false) const;
};

/// FNV-1a, the stable 64-bit digest used for input pinning.
std::uint64_t fnv1a(std::string_view s);
std::string digest_hex(std::string_view s);

}  // namespace harmlab
