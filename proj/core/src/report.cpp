#include "harmlab/report.hpp"

#include <cinttypes>
#include <cstdio>

namespace harmlab {

nlohmann::json Record::to_json() const {
  return {
      {"id", id},
      {"inputs_digest", inputs_digest},
      {"lhs", {lhs.real(), lhs.imag()}},
      {"rhs", {rhs.real(), rhs.imag()}},
      {"residual", residual},
      {"tolerance", tolerance},
      {"tail_bound", tail_bound},
      {"wall_time_ms", wall_time_ms},
      {"pass", pass},
  };
}

int Report::passed() const {
  int n = 0;
  for (const auto& r : records) n += r.pass ? 1 : 0;
  return n;
}

nlohmann::json Report::to_json(bool strip_timing) const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j = r.to_json();
    if (strip_timing) j["wall_time_ms"] = 0.0;
    recs.push_back(std::move(j));
  }
  return {
      {"tool_version", tool_version},
      {"config", config_echo},
      {"records", std::move(recs)},
      {"summary",
       {{"total", total()}, {"passed", passed()}, {"failed", total() - passed()}}},
  };
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::string_view s) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a(s));
  return buf;
}

}  // namespace harmlab
