#pragma once

#include <stdexcept>
#include <string>

#include "starcache/dqn.hpp"
#include "starcache/env.hpp"
#include "starcache/td3.hpp"

namespace starcache {

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Versioned binary container: every network, both optimizers' state, the
/// episode counter, the noise-schedule position and the frequency table.
/// Writes are raw little-endian doubles, so a round trip is bit-exact.
/// dqn may be null for the continuous-only algorithms.
void save_checkpoint(const std::string& path, const Td3Agent& td3, const DqnAgent* dqn,
                     const FrequencyTable& freq, int64_t episode);

/// Loads into fully constructed agents of matching shape. The file is parsed
/// and validated completely before any target is touched; truncation, junk or
/// a version mismatch throw CheckpointError and leave the agents unchanged.
int64_t load_checkpoint(const std::string& path, Td3Agent& td3, DqnAgent* dqn,
                        FrequencyTable& freq);

}  // namespace starcache
