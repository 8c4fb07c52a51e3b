#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cardguard/config.hpp"
#include "cardguard/evaluate.hpp"
#include "cardguard/simulate.hpp"

namespace cardguard {

// Flat `key = value` documents, '#' comments. Errors name the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every key is optional and overrides the built-in default; unknown keys are
// rejected. See the shipped configs/default.cfg for the full key list.
EngineConfig load_engine_config(const std::string& path);

GenParams load_gen_params(const std::string& path);

struct AttackPlan {
    std::vector<AttackSpec> attacks;
    std::uint64_t seed = 1;
};
AttackPlan load_attack_plan(const std::string& path);

SweepGrid load_sweep_grid(const std::string& path);

// "From = To" lines mapping an input CSV header name to the canonical name.
std::map<std::string, std::string> load_header_remap(const std::string& path);

}  // namespace cardguard
