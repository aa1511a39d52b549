#pragma once

#include "relrank/nat.hpp"
#include "relrank/report.hpp"

namespace relrank {

// Desk-scale invariant battery across every module.  Deterministic for a
// fixed (prefix_len, seed, budget): the report carries no timing or other
// environment data, so two runs render byte-identically.
RunReport verify_all(nat prefix_len = 1024, nat seed = 0, nat budget = 1 << 16);

}  // namespace relrank
