#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pisim/learner.hpp"

namespace pisim {

// Checkpoint file: one JSON header line (format version, dimensions,
// config hash), then the agents' flat parameter vectors as raw little-
// endian doubles. Used for resuming long runs.
void save_checkpoint(const std::string& path, const std::vector<Learner>& agents,
                     std::uint64_t config_hash);

// Restores parameters in place; throws if the header does not match the
// given agents or config hash.
void load_checkpoint(const std::string& path, std::vector<Learner>& agents,
                     std::uint64_t config_hash);

}  // namespace pisim
