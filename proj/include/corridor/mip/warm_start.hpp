#pragma once

#include <string>

#include "corridor/domain.hpp"
#include "corridor/mip/backend.hpp"

namespace corridor::mip {

struct WarmStartOutcome {
  bool accepted = false;
  WarmStart hint;
  std::string rejected_because;  // violated constraint or bound when not accepted
};

// Maps a verified baseline itinerary onto the model's variables (including
// charger assignments and pair-ordering binaries) as a starting incumbent.
// The hint's objective equals the PWL-mode cost of the baseline.
WarmStartOutcome warm_start_from(const MipModel& model, const Scenario& scenario,
                                 const Solution& reference);

}  // namespace corridor::mip
