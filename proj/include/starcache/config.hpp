#pragma once

#include <stdexcept>
#include <string>

#include "starcache/dqn.hpp"
#include "starcache/env.hpp"
#include "starcache/td3.hpp"

namespace starcache {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The six compared system models.
enum class VariantTag {
    caching_at_stars,
    caching_at_ris,
    stars_aided,   // BS cache only
    ris_aided,
    stars_nocache,
    ris_nocache,
};

enum class Algo { td3, fatd3, td3dqn };

VariantTag parse_variant(const std::string& s);
Algo parse_algo(const std::string& s);
PhaseModel parse_phase(const std::string& s);
std::string to_string(VariantTag v);
std::string to_string(Algo a);
std::string to_string(PhaseModel p);

/// Everything one run needs. The file supplies the numbers; variant, algo and
/// phase usually come from the command line.
struct RunConfig {
    EnvConfig env;
    Td3Config td3;
    DqnConfig dqn;
    NoiseSchedule noise;   // max_episode is filled in by finalize_config
    int episodes = 200;
    int steps = 100;
    VariantTag variant = VariantTag::caching_at_stars;
    Algo algo = Algo::fatd3;
};

/// Parse a flat key=value file ('#' comments, blank lines allowed) onto the
/// defaults. Unknown keys and malformed values raise ConfigError.
RunConfig load_config(const std::string& path);

/// Apply one key=value pair; shared by the file loader and tests.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Resolve variant/algo into the env flags (cache presence, surface type,
/// codec, serialized mask), fill the noise schedule length, then validate the
/// whole bundle. Throws ConfigError on any inconsistency.
void finalize_config(RunConfig& cfg);

}  // namespace starcache
