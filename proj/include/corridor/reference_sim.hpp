#pragma once

#include <vector>

#include "corridor/domain.hpp"

// Discrete-event simulation of the uncoordinated baseline: every truck
// charges greedily (only when the next segment would take it below its SoC
// floor, and then only enough to exit the corridor at the floor), rests once,
// and queues FIFO when all chargers at its chosen station are busy.
namespace corridor {

// Energy to add at `station_pos` (index into the truck's station order) given
// the energy on arrival. Zero while the next segment is reachable above the
// floor; otherwise as much of (floor + remaining route - current) as battery
// headroom permits, so the truck exits at exactly the floor. Throws
// std::invalid_argument if even a full battery cannot cross the next segment.
double plan_greedy_charge(const Truck& truck, const Scenario& scenario,
                          const std::vector<int>& order, int station_pos,
                          double energy_on_arrival_kwh);

// Full baseline run. Deterministic: events are processed in (time, truck id,
// kind) order and queue ties break by truck id.
Solution simulate(const Scenario& scenario);

}  // namespace corridor
