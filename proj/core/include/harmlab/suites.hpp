#pragma once

#include <functional>
#include <string>
#include <vector>

#include "harmlab/quadrature.hpp"
#include "harmlab/report.hpp"

namespace harmlab {

/// Shared knobs for a verification run.  Each suite seeds its own generator
/// from (seed, suite id), so results do not depend on which other suites run
/// or in what order.
struct SuiteContext {
  std::uint64_t seed = 1;
  double tol_scale = 1.0;  // multiplies every suite tolerance
  QuadConfig quad;
  int corpus_size = 20;
  int max_n_heis = 3;
  int max_n_su2 = 4;
  int jobs = 0;  // 0 = hardware concurrency
};

struct SuiteInfo {
  std::string id;
  std::string description;  // the identity being checked, printed by explain
  double base_tolerance;    // before tol_scale
  std::function<std::vector<Record>(const SuiteContext&)> run;
};

/// Fixed-order registry of every suite.
const std::vector<SuiteInfo>& all_suites();

/// Resolve ids/globs ('*' wildcard) against the registry, preserving registry
/// order and deduplicating.  Throws ConfigError if a pattern matches nothing.
std::vector<const SuiteInfo*> select_suites(
    const std::vector<std::string>& patterns);

/// Run the suites in registry order, in parallel up to ctx.jobs, and collect
/// records ordered by suite id then corpus index.
std::vector<Record> run_suites(const std::vector<const SuiteInfo*>& suites,
                               const SuiteContext& ctx);

}  // namespace harmlab
