#pragma once

#include <cstdint>

#include "k1lab/congruence.hpp"
#include "k1lab/serialize.hpp"

namespace k1lab {

EngineConfig engine_config(const RunConfig& cfg);
GroupRef build_group(const RunConfig& cfg);

// Unit number `index` of the stream seeded by `seed`; gen-unit and the suites share it.
Elt sample_unit(const GroupRing& R, std::uint64_t seed, std::uint64_t index);

// Runs every requested suite on the configured group. Deterministic except for timing.
Report run_suites(const RunConfig& cfg);

}  // namespace k1lab
