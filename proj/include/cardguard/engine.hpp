#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cardguard/config.hpp"
#include "cardguard/controller.hpp"
#include "cardguard/profile.hpp"
#include "cardguard/window.hpp"

namespace cardguard {

// Contract violation in the input stream (bad record, seq_no regression).
// Engine state is unchanged when this is thrown.
class StreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable, corrupt, or version-mismatched checkpoint bytes.
class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EngineCounters {
    std::int64_t processed = 0;
    std::int64_t allowed = 0;
    std::int64_t flagged = 0;
    std::int64_t blocked = 0;
    std::int64_t limited = 0;
    std::int64_t stepup = 0;
    std::int64_t enrichment = 0;
    std::int64_t time_warnings = 0;  // per-card clock regressions seen in the data

    std::int64_t decided() const {
        return allowed + flagged + blocked + limited + stepup + enrichment;
    }
    bool operator==(const EngineCounters&) const = default;
};

// Per-transaction pipeline across many cards: profile -> score -> window ->
// controller. State is sharded by card_id; cards never interact, so callers
// may partition a stream by card and run partitions concurrently. Within a
// card processing is strictly sequential.
class DetectionEngine {
public:
    struct CardState {
        CardholderProfile profile;
        ForgettingWindow window;
        ControllerState ctrl;
        std::optional<Timestamp> last_seen;  // any processed transaction (gap scoring)
        std::int64_t last_seq = -1;
    };

    DetectionEngine() : DetectionEngine(EngineConfig{}) {}
    explicit DetectionEngine(EngineConfig cfg);

    // Throws StreamError on a malformed transaction or seq_no violation;
    // engine state is untouched in that case.
    Decision process(const Transaction& txn);

    std::vector<Decision> process_stream(const std::vector<Transaction>& txns);

    const EngineCounters& counters() const { return counters_; }
    const EngineConfig& config() const { return cfg_; }
    std::size_t card_count() const { return cards_.size(); }
    const CardState* card(const std::string& card_id) const;

    // Versioned, self-describing bytes. restore(checkpoint()) yields an
    // engine whose future decisions match this one's exactly.
    std::string checkpoint() const;
    static DetectionEngine restore(std::string_view bytes);

private:
    EngineConfig cfg_;
    std::unordered_map<std::string, CardState> cards_;
    EngineCounters counters_;

    CardState& card_state(const std::string& card_id);
};

}  // namespace cardguard
