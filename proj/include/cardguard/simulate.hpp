#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cardguard/types.hpp"

namespace cardguard {

// Desk-scale synthetic benign traffic: per-card lognormal amounts, exponential
// inter-transaction gaps pushed into the card's active hours, a weighted MCC
// pool, and a low background error rate. Output is fully determined by seed.
struct GenParams {
    std::uint64_t seed = 1;
    int n_cards = 1;
    int txns_per_card = 100;
    double spend_mean = 85.0;  // dollars
    double spend_cv = 0.35;    // coefficient of variation of the lognormal
    int active_hour_begin = 7;
    int active_hour_end = 22;  // inclusive
    std::vector<std::string> state_pool = {"CA", "NY", "TX", "FL", "IL",
                                           "WA", "AZ", "NV", "OR", "CO"};
    double benign_gap_mean_minutes = 360.0;
    std::vector<std::pair<int, double>> mcc_pool = {
        {5411, 30}, {5541, 15}, {5812, 20}, {5814, 10},
        {5912, 10}, {4900, 5},  {5999, 10},
    };
    Timestamp start_time = 0;  // set by validate() when left at 0
    double error_prob = 0.005;
    double online_prob = 0.10;

    void validate() const;  // throws std::invalid_argument
};

// Attack anatomy: a short onset of small amounts followed by high amounts at
// high rate, night hours, fraud-prone MCCs, and frequent authorization errors.
struct AttackParams {
    int n_low = 3;
    Cents low_amount_min = 100;    // 1.00 USD
    Cents low_amount_max = 1000;   // 10.00 USD
    double high_amount_multiplier = 5.0;  // applied to the card's mean spend
    int attack_gap_min_s = 10;
    int attack_gap_max_s = 120;
    std::vector<int> attack_mcc_pool = {4829, 5966, 6051, 7995};
    double error_prob = 0.4;  // per flag: TechnicalGlitch and BadCVV
    int attack_hour_begin = 0;
    int attack_hour_end = 5;  // inclusive
    int duration_txns = 12;

    void validate() const;  // throws std::invalid_argument (n_low < duration_txns, ...)
};

struct AttackSpec {
    std::string card_id;
    Timestamp start_time = 0;
    AttackParams params;
};

// Benign labeled stream (fraud_label = false everywhere), sorted per card by
// time, seq_no 0..txns_per_card-1 per card.
std::vector<Transaction> generate(const GenParams& params);

// Inserts duration_txns fraud-labeled transactions per attack, re-sorts the
// stream by (card_id, time) and reassigns per-card seq_no. The high-amount
// phase scales the card's empirical mean spend from the given stream.
// Throws std::invalid_argument on overlapping attacks for one card or a
// start time outside the card's stream span. An empty attack list returns
// the stream unchanged.
std::vector<Transaction> inject_attacks(std::vector<Transaction> stream,
                                        const std::vector<AttackSpec>& attacks,
                                        std::uint64_t seed);

}  // namespace cardguard
