#pragma once

#include <cstdint>

#include "core.hpp"

namespace rocsbb {

// Bundled Trail Making Test Part A completion times (seconds) for 245
// Parkinson's disease patients: 170 unimpaired (group 1), 52 with mild
// cognitive impairment (group 2), 23 with dementia (group 3).
ThreeGroupSample tmt_part_a();

// Checksum of the bundled dataset (sample_checksum convention).
std::uint64_t tmt_part_a_checksum();

}  // namespace rocsbb
