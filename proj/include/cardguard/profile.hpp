#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cardguard/types.hpp"

namespace cardguard {

// Behavioral profile of one cardholder: hour-of-day histogram, modal merchant
// state, and MCC familiarity. Updated only for transactions the controller
// accepted, so blocked attack traffic cannot poison it.
class CardholderProfile {
public:
    // Profiles with fewer updates than this report warm-up; the scorer halves
    // time/location contributions to curb cold-start false alarms.
    static constexpr std::int64_t kWarmupTxns = 5;

    CardholderProfile() = default;
    explicit CardholderProfile(std::string card_id, int familiar_mcc_min = 3)
        : card_id_(std::move(card_id)), familiar_mcc_min_(familiar_mcc_min) {}

    const std::string& card_id() const { return card_id_; }

    // Throws std::invalid_argument when txn.card_id does not match.
    void update(const Transaction& txn);

    // 1 - hist[hour]/max_bin: 0 at the modal hour, 1 for a never-seen hour.
    // An empty profile is maximally unusual (1.0); callers detect warm-up via
    // warmed_up().
    double hour_unusualness(int hour) const;

    bool warmed_up() const { return txn_count_ >= kWarmupTxns; }

    const std::array<std::int64_t, 24>& hour_histogram() const { return hours_; }
    const std::string& modal_state() const { return modal_state_; }
    bool is_familiar_mcc(int mcc) const;
    std::optional<Timestamp> last_txn_time() const { return last_txn_time_; }
    std::int64_t txn_count() const { return txn_count_; }
    int familiar_mcc_min() const { return familiar_mcc_min_; }

    // Serialization access. Ordered maps keep checkpoints deterministic.
    const std::map<std::string, std::int64_t>& state_counts() const { return state_counts_; }
    const std::map<int, std::int64_t>& mcc_counts() const { return mcc_counts_; }

    static CardholderProfile from_parts(std::string card_id, int familiar_mcc_min,
                                        std::array<std::int64_t, 24> hours,
                                        std::map<std::string, std::int64_t> state_counts,
                                        std::string modal_state,
                                        std::map<int, std::int64_t> mcc_counts,
                                        std::optional<Timestamp> last_txn_time,
                                        std::int64_t txn_count);

private:
    std::string card_id_;
    int familiar_mcc_min_ = 3;
    std::array<std::int64_t, 24> hours_{};
    std::map<std::string, std::int64_t> state_counts_;
    std::string modal_state_;  // ties break toward the most recent transaction
    std::map<int, std::int64_t> mcc_counts_;
    std::optional<Timestamp> last_txn_time_;
    std::int64_t txn_count_ = 0;
};

}  // namespace cardguard
