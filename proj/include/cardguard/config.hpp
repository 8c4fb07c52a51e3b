#pragma once

#include <cstdint>
#include <set>

#include "cardguard/money.hpp"
#include "cardguard/scoring.hpp"

namespace cardguard {

// All detection knobs in one value type. Defaults are the calibration
// starting points the sweep harness explores.
struct EngineConfig {
    int window_size = 20;              // N
    double forgetting_factor = 0.9;    // lambda in (0, 1]
    double interval_multiplier = 3.0;  // c
    double std_floor_rel = 0.1;        // rho
    Cents std_floor_abs = 100;         // a0, 1.00 USD

    ScoreTable score_table = ScoreTable::defaults();
    int soft_threshold = 5;
    int hard_threshold = 10;

    // Recovery fires at the wall-clock deadline or after this many accepted
    // transactions while under attack, whichever comes first.
    std::int64_t recovery_minutes = 30;
    std::int64_t recovery_txns = 10;

    Cents small_amount_cap = 5000;  // 50.00 USD

    // MCCs rarely tied to fraud keep working (capped) during an attack.
    std::set<int> mcc_allowlist = {4900, 5411, 5541, 5812, 5814, 5912};
    // MCCs likely tied to fraud are amount-limited under an uncertain score.
    std::set<int> mcc_blocklist = {4829, 5966, 5967, 6051, 7995};

    int familiar_mcc_min = 3;

    // Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

}  // namespace cardguard
