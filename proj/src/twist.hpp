#pragma once

#include "mcdiv/graph.hpp"

#include <functional>

namespace mcdiv {

// Outgoing slopes at v, one per edge of g.incident(v), in that order.
using SlopeCheck = std::function<bool(int v, const std::vector<std::int64_t>& slopes)>;

// Searches potentials on the model vertices, linear on every edge with an
// integer slope of absolute value at most `bound`, accepted at every vertex.
bool find_twist(const GraphModel& g, std::int64_t bound, const SlopeCheck& accept);

// Local rank at v once the twist has the given outgoing slopes there.
using LocalRank = std::function<int(int v, const std::vector<std::int64_t>& slopes)>;

// The largest k <= k_max such that every spread e of k chips over the
// vertices admits a twist with local(v, slopes) >= e_v everywhere, or -1.
// Slopes are bounded by base_bound + k; a failing spread is rechecked with
// two more and a change throws.
int twist_rank(const GraphModel& g, std::int64_t base_bound, std::int64_t k_max, const LocalRank& local);

}  // namespace mcdiv
