#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cardguard/config.hpp"
#include "cardguard/scoring.hpp"
#include "cardguard/types.hpp"
#include "cardguard/window.hpp"

namespace cardguard {

// Recovering is instantaneous: the deadline check runs at the top of step(),
// so the steady-state modes observable between decisions are Monitoring and
// UnderAttack.
enum class ControlMode : std::uint8_t { Monitoring, UnderAttack, Recovering };

enum class Action : std::uint8_t {
    Allow,
    Flag,
    Block,
    LimitAmount,
    StepUpAuth,
    DataEnrichment,
};

enum class Reason : std::uint8_t {
    Warmup,
    UpperOutlier,
    AttackStart,
    UnderAttack,
    UncertainScore,
    SmallGap,
    HighRiskMcc,
    UnusualTime,
    GeoMismatch,
    ErrorFlags,
    AllowlistedMcc,
    BlocklistedMcc,
    Recovered,
};

std::string_view to_string(ControlMode m);
std::string_view to_string(Action a);
std::string_view to_string(Reason r);  // UPPER_SNAKE reason codes
std::optional<ControlMode> control_mode_from_string(std::string_view s);
std::optional<Action> action_from_string(std::string_view s);
std::optional<Reason> reason_from_string(std::string_view s);

struct ControllerState {
    ControlMode mode = ControlMode::Monitoring;
    std::optional<Timestamp> attack_started_at;
    std::int64_t txns_since_attack = 0;  // accepted transactions while under attack
    std::optional<Timestamp> recovery_deadline;
    int uncertain_streak = 0;  // consecutive Uncertain classifications while monitoring
};

struct Decision {
    std::string card_id;
    std::int64_t seq_no = 0;
    Action action = Action::Allow;
    std::optional<Cents> cap;  // present for LimitAmount
    std::vector<Reason> reasons;
    int score_total = 0;
    Interval interval;  // at decision time; (0, 0) during warm-up and collapse
    double mean = 0.0;  // effective weighted mean at decision time
    ControlMode mode_after = ControlMode::Monitoring;

    bool has_reason(Reason r) const;
    bool accepted() const {  // outcomes that feed the window and profile
        return action == Action::Allow || action == Action::Flag ||
               action == Action::LimitAmount;
    }
    // Amount actually authorized: min(amount, cap) for LimitAmount.
    Cents authorized_amount(Cents requested) const;
};

// One controller transition. Applies collapse/reset to the window, feeds
// accepted amounts into it, and returns the mitigation decision. The caller
// owns the profile update. Throws std::invalid_argument on card mismatch.
Decision step(ControllerState& ctrl, ForgettingWindow& window, const ScoreCard& score,
              const Transaction& txn, const EngineConfig& cfg, Timestamp now);

}  // namespace cardguard
