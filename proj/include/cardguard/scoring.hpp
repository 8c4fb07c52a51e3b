#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "cardguard/profile.hpp"
#include "cardguard/types.hpp"

namespace cardguard {

// Every factor is quantified as a small nonnegative integer score; the sum of
// the factor scores estimates the intensity of fraudulent activity.

struct GapTier {
    std::int64_t max_gap_seconds = 0;
    int score = 0;
};

struct ScoreTable {
    std::vector<GapTier> gap_tiers;  // sorted by ascending max_gap_seconds
    std::map<int, int> mcc_risk;     // MCC -> score
    int mcc_default = 0;
    std::set<int> night_hours;
    int night_score = 0;
    double unusualness_cutoff = 1.0;
    int unusualness_score = 0;
    int geo_mismatch_score = 0;
    std::map<ErrorFlag, int> error_scores;

    static ScoreTable defaults();
};

enum class Intensity : std::uint8_t { Normal, Uncertain, AttackStart };

std::string_view to_string(Intensity i);

struct ScoreCard {
    int gap_score = 0;
    int mcc_score = 0;
    int time_score = 0;
    int location_score = 0;
    int error_score = 0;
    int total = 0;
    Intensity intensity = Intensity::Normal;
};

// Inter-transaction gap, scored by the first tier with gap <= max_gap.
// No previous transaction -> 0. A clock regression is treated as gap 0 (the
// tightest tier); callers surface the data-quality warning.
int score_gap(std::optional<Timestamp> prev_time, Timestamp now, const ScoreTable& table);

int score_mcc(int mcc, const ScoreTable& table);

// Night-hour score plus unusual-hour score, halved (floor) during warm-up.
int score_time(int hour, const CardholderProfile& profile, const ScoreTable& table);

// Geographic mismatch against the modal state. ONLINE is location-neutral;
// halved (floor) during warm-up.
int score_location(const Transaction& txn, const CardholderProfile& profile,
                   const ScoreTable& table);

int score_errors(const ErrorSet& errors, const ScoreTable& table);

// Sum of the five factor scores plus the intensity classification:
// AttackStart at total >= hard, Uncertain at soft <= total < hard.
ScoreCard total_score(const Transaction& txn, std::optional<Timestamp> prev_time,
                      const CardholderProfile& profile, const ScoreTable& table, int soft,
                      int hard);

}  // namespace cardguard
