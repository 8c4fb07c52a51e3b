#include "cardguard/scoring.hpp"

#include <stdexcept>

namespace cardguard {

ScoreTable ScoreTable::defaults() {
    ScoreTable t;
    t.gap_tiers = {{60, 3}, {300, 2}, {900, 1}};
    t.mcc_risk = {
        {4829, 3},  // money transfer
        {5966, 3},  // direct marketing, outbound
        {5967, 3},  // direct marketing, inbound
        {6051, 3},  // quasi cash / cryptocurrency
        {7995, 3},  // betting and gambling
    };
    t.mcc_default = 0;
    t.night_hours = {0, 1, 2, 3, 4, 5};
    t.night_score = 2;
    t.unusualness_cutoff = 0.9;
    t.unusualness_score = 1;
    t.geo_mismatch_score = 2;
    t.error_scores = {
        {ErrorFlag::BadCVV, 3},
        {ErrorFlag::BadPIN, 3},
        {ErrorFlag::BadZip, 2},
        {ErrorFlag::InsufficientBalance, 2},
        {ErrorFlag::TechnicalGlitch, 2},
        {ErrorFlag::BadExpiration, 1},
        {ErrorFlag::BadCardNumber, 1},
        {ErrorFlag::UnknownError, 1},
    };
    return t;
}

std::string_view to_string(Intensity i) {
    switch (i) {
        case Intensity::Normal: return "Normal";
        case Intensity::Uncertain: return "Uncertain";
        case Intensity::AttackStart: return "AttackStart";
    }
    return "Normal";
}

int score_gap(std::optional<Timestamp> prev_time, Timestamp now, const ScoreTable& table) {
    if (!prev_time) return 0;
    std::int64_t gap = now - *prev_time;
    if (gap < 0) gap = 0;  // clock regression: score as the tightest tier
    for (const auto& tier : table.gap_tiers)
        if (gap <= tier.max_gap_seconds) return tier.score;
    return 0;
}

int score_mcc(int mcc, const ScoreTable& table) {
    auto it = table.mcc_risk.find(mcc);
    return it == table.mcc_risk.end() ? table.mcc_default : it->second;
}

int score_time(int hour, const CardholderProfile& profile, const ScoreTable& table) {
    if (hour < 0 || hour > 23) throw std::invalid_argument("hour out of range");
    int score = 0;
    if (table.night_hours.count(hour)) score += table.night_score;
    if (profile.hour_unusualness(hour) >= table.unusualness_cutoff)
        score += table.unusualness_score;
    if (!profile.warmed_up()) score /= 2;
    return score;
}

int score_location(const Transaction& txn, const CardholderProfile& profile,
                   const ScoreTable& table) {
    if (txn.merchant_state == kOnlineState) return 0;  // all online purchases carry ONLINE
    if (profile.modal_state().empty()) return 0;
    int score = txn.merchant_state == profile.modal_state() ? 0 : table.geo_mismatch_score;
    if (!profile.warmed_up()) score /= 2;
    return score;
}

int score_errors(const ErrorSet& errors, const ScoreTable& table) {
    int score = 0;
    errors.for_each([&](ErrorFlag f) {
        auto it = table.error_scores.find(f);
        if (it != table.error_scores.end()) score += it->second;
    });
    return score;
}

ScoreCard total_score(const Transaction& txn, std::optional<Timestamp> prev_time,
                      const CardholderProfile& profile, const ScoreTable& table, int soft,
                      int hard) {
    if (!(hard > soft && soft > 0)) throw std::invalid_argument("thresholds must satisfy hard > soft > 0");
    ScoreCard card;
    card.gap_score = score_gap(prev_time, txn.timestamp, table);
    card.mcc_score = score_mcc(txn.mcc, table);
    card.time_score = score_time(hour_of(txn.timestamp), profile, table);
    card.location_score = score_location(txn, profile, table);
    card.error_score = score_errors(txn.errors, table);
    card.total = card.gap_score + card.mcc_score + card.time_score + card.location_score +
                 card.error_score;
    if (card.total >= hard)
        card.intensity = Intensity::AttackStart;
    else if (card.total >= soft)
        card.intensity = Intensity::Uncertain;
    else
        card.intensity = Intensity::Normal;
    return card;
}

}  // namespace cardguard
