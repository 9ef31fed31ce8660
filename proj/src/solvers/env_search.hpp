#pragma once

#include <cstdint>
#include <optional>

#include "solvers/instance.hpp"

namespace fsr {

struct LazySearchResult {
  std::optional<Environment> witness;
  Verdict verdict;                // of the successful branch
  std::uint64_t leaves = 0;       // completed runs
  std::uint64_t branch_points = 0;
};

// Exact environment search driven by what the team actually senses. The run
// starts on a fully undecided grid; whenever a read depends on an undecided
// square or edge the search branches over the classes of options that the
// read can distinguish. Returns the first witness in depth-first order.
// Throws ResourceLimit if more than `max_leaves` runs are needed.
LazySearchResult lazy_env_search(const Instance& inst, const Team& team, const std::vector<Coord>& p_i,
                                 const RunOptions& opts, std::uint64_t max_leaves);

}  // namespace fsr
