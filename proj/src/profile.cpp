#include "cardguard/profile.hpp"

#include <algorithm>
#include <stdexcept>

namespace cardguard {

void CardholderProfile::update(const Transaction& txn) {
    if (txn.card_id != card_id_)
        throw std::invalid_argument("profile update for card " + card_id_ +
                                    " received transaction for " + txn.card_id);

    hours_[static_cast<std::size_t>(hour_of(txn.timestamp))] += 1;

    auto& state_count = state_counts_[txn.merchant_state];
    state_count += 1;
    // >= rather than >: a tie moves the mode to the most recent state.
    if (modal_state_.empty() || state_count >= state_counts_[modal_state_])
        modal_state_ = txn.merchant_state;

    mcc_counts_[txn.mcc] += 1;

    if (!last_txn_time_ || txn.timestamp > *last_txn_time_) last_txn_time_ = txn.timestamp;
    txn_count_ += 1;
}

double CardholderProfile::hour_unusualness(int hour) const {
    if (hour < 0 || hour > 23) throw std::invalid_argument("hour out of range");
    if (txn_count_ == 0) return 1.0;
    std::int64_t max_bin = *std::max_element(hours_.begin(), hours_.end());
    if (max_bin == 0) return 1.0;
    return 1.0 - static_cast<double>(hours_[static_cast<std::size_t>(hour)]) /
                     static_cast<double>(max_bin);
}

bool CardholderProfile::is_familiar_mcc(int mcc) const {
    auto it = mcc_counts_.find(mcc);
    return it != mcc_counts_.end() && it->second >= familiar_mcc_min_;
}

CardholderProfile CardholderProfile::from_parts(
    std::string card_id, int familiar_mcc_min, std::array<std::int64_t, 24> hours,
    std::map<std::string, std::int64_t> state_counts, std::string modal_state,
    std::map<int, std::int64_t> mcc_counts, std::optional<Timestamp> last_txn_time,
    std::int64_t txn_count) {
    CardholderProfile p(std::move(card_id), familiar_mcc_min);
    p.hours_ = hours;
    p.state_counts_ = std::move(state_counts);
    p.modal_state_ = std::move(modal_state);
    p.mcc_counts_ = std::move(mcc_counts);
    p.last_txn_time_ = last_txn_time;
    p.txn_count_ = txn_count;
    return p;
}

}  // namespace cardguard
