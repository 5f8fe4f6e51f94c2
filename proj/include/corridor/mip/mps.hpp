#pragma once

#include <string>

#include "corridor/mip/model.hpp"

namespace corridor::mip {

// Free-format MPS with deterministic ordering and number formatting; suitable
// for byte-comparison golden tests. SOS2 groups are emitted in the CPLEX-style
// SOS section (only under the native encoding; the delta encoding is plain
// rows and binaries).
std::string write_mps(const MipModel& model);

}  // namespace corridor::mip
