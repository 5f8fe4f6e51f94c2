#pragma once

#include "corridor/mip/backend.hpp"

namespace corridor::mip {

// Self-contained branch-and-bound over the dual-simplex LP engine. Branches
// on fractional binaries (charge/charger decisions first) and on SOS2
// adjacency violations; node re-solves warm start from the parent basis.
// Deterministic for fixed inputs up to the wall-clock limit.
class InternalBackend : public SolverBackend {
 public:
  BackendCapabilities capabilities() const override { return {"internal-bb", true}; }
  BackendResult solve(const MipModel& model, const SolveLimits& limits,
                      const WarmStart* warm) override;
};

}  // namespace corridor::mip
