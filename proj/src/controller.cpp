#include "cardguard/controller.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace cardguard {

namespace {

constexpr std::array<std::pair<ControlMode, std::string_view>, 3> kModeNames{{
    {ControlMode::Monitoring, "Monitoring"},
    {ControlMode::UnderAttack, "UnderAttack"},
    {ControlMode::Recovering, "Recovering"},
}};

constexpr std::array<std::pair<Action, std::string_view>, 6> kActionNames{{
    {Action::Allow, "Allow"},
    {Action::Flag, "Flag"},
    {Action::Block, "Block"},
    {Action::LimitAmount, "LimitAmount"},
    {Action::StepUpAuth, "StepUpAuth"},
    {Action::DataEnrichment, "DataEnrichment"},
}};

constexpr std::array<std::pair<Reason, std::string_view>, 13> kReasonNames{{
    {Reason::Warmup, "WARMUP"},
    {Reason::UpperOutlier, "UPPER_OUTLIER"},
    {Reason::AttackStart, "ATTACK_START"},
    {Reason::UnderAttack, "UNDER_ATTACK"},
    {Reason::UncertainScore, "UNCERTAIN_SCORE"},
    {Reason::SmallGap, "SMALL_GAP"},
    {Reason::HighRiskMcc, "HIGH_RISK_MCC"},
    {Reason::UnusualTime, "UNUSUAL_TIME"},
    {Reason::GeoMismatch, "GEO_MISMATCH"},
    {Reason::ErrorFlags, "ERROR_FLAGS"},
    {Reason::AllowlistedMcc, "ALLOWLISTED_MCC"},
    {Reason::BlocklistedMcc, "BLOCKLISTED_MCC"},
    {Reason::Recovered, "RECOVERED"},
}};

void append_factor_reasons(const ScoreCard& score, std::vector<Reason>& reasons) {
    if (score.gap_score > 0) reasons.push_back(Reason::SmallGap);
    if (score.mcc_score > 0) reasons.push_back(Reason::HighRiskMcc);
    if (score.time_score > 0) reasons.push_back(Reason::UnusualTime);
    if (score.location_score > 0) reasons.push_back(Reason::GeoMismatch);
    if (score.error_score > 0) reasons.push_back(Reason::ErrorFlags);
}

}  // namespace

std::string_view to_string(ControlMode m) {
    return kModeNames[static_cast<unsigned>(m)].second;
}
std::string_view to_string(Action a) {
    return kActionNames[static_cast<unsigned>(a)].second;
}
std::string_view to_string(Reason r) {
    return kReasonNames[static_cast<unsigned>(r)].second;
}

std::optional<ControlMode> control_mode_from_string(std::string_view s) {
    for (const auto& [v, n] : kModeNames)
        if (n == s) return v;
    return std::nullopt;
}
std::optional<Action> action_from_string(std::string_view s) {
    for (const auto& [v, n] : kActionNames)
        if (n == s) return v;
    return std::nullopt;
}
std::optional<Reason> reason_from_string(std::string_view s) {
    for (const auto& [v, n] : kReasonNames)
        if (n == s) return v;
    return std::nullopt;
}

bool Decision::has_reason(Reason r) const {
    return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

Cents Decision::authorized_amount(Cents requested) const {
    if (action == Action::LimitAmount && cap) return std::min(requested, *cap);
    return requested;
}

Decision step(ControllerState& ctrl, ForgettingWindow& window, const ScoreCard& score,
              const Transaction& txn, const EngineConfig& cfg, Timestamp now) {
    Decision d;
    d.card_id = txn.card_id;
    d.seq_no = txn.seq_no;
    d.score_total = score.total;

    // Rule 1: recovery horizon reached — restore the pre-attack interval and
    // fall through to normal handling of this transaction.
    bool recovered_now = false;
    if (ctrl.mode == ControlMode::UnderAttack &&
        ((ctrl.recovery_deadline && now >= *ctrl.recovery_deadline) ||
         ctrl.txns_since_attack >= cfg.recovery_txns)) {
        window.reset();
        ctrl.mode = ControlMode::Monitoring;
        ctrl.attack_started_at.reset();
        ctrl.txns_since_attack = 0;
        ctrl.recovery_deadline.reset();
        ctrl.uncertain_streak = 0;
        recovered_now = true;
    }

    if (ctrl.mode == ControlMode::Monitoring && score.intensity == Intensity::AttackStart) {
        // Rule 2: attack onset — zero the band and block. Attack handling wins
        // over any allowlist consideration.
        window.collapse();
        ctrl.mode = ControlMode::UnderAttack;
        ctrl.attack_started_at = now;
        ctrl.txns_since_attack = 0;
        ctrl.recovery_deadline = now + cfg.recovery_minutes * 60;
        ctrl.uncertain_streak = 0;
        d.action = Action::Block;
        d.reasons.push_back(Reason::AttackStart);
        append_factor_reasons(score, d.reasons);
    } else if (ctrl.mode == ControlMode::UnderAttack) {
        // Rule 3: collapsed band — every positive amount is an outlier.
        // Rarely-fraudulent MCCs keep working at small amounts.
        auto verdict = window.classify(txn.amount);
        if (verdict && *verdict == AmountClass::UpperOutlier) {
            if (cfg.mcc_allowlist.count(txn.mcc) && txn.amount <= cfg.small_amount_cap) {
                d.action = Action::LimitAmount;
                d.cap = cfg.small_amount_cap;
                d.reasons.push_back(Reason::UnderAttack);
                d.reasons.push_back(Reason::AllowlistedMcc);
            } else {
                d.action = Action::Block;
                d.reasons.push_back(Reason::UnderAttack);
                d.reasons.push_back(Reason::UpperOutlier);
            }
        } else {
            d.action = Action::Allow;  // zero amount sits inside the zero band
        }
    } else if (score.intensity == Intensity::Uncertain) {
        // Rule 4: uncertain intensity — step up authentication first, enrich
        // on repeats; blocklisted MCCs are amount-limited outright.
        ctrl.uncertain_streak += 1;
        d.reasons.push_back(Reason::UncertainScore);
        if (cfg.mcc_blocklist.count(txn.mcc)) {
            d.action = Action::LimitAmount;
            d.cap = cfg.small_amount_cap;
            d.reasons.push_back(Reason::BlocklistedMcc);
        } else if (ctrl.uncertain_streak == 1) {
            d.action = Action::StepUpAuth;
        } else {
            d.action = Action::DataEnrichment;
        }
        append_factor_reasons(score, d.reasons);
    } else {
        // Rule 5: normal intensity — the window verdict decides.
        ctrl.uncertain_streak = 0;
        auto verdict = window.classify(txn.amount);
        if (!verdict) {
            d.action = Action::Allow;
            d.reasons.push_back(Reason::Warmup);
        } else if (*verdict == AmountClass::UpperOutlier) {
            d.action = Action::Block;
            d.reasons.push_back(Reason::UpperOutlier);
        } else {
            d.action = Action::Allow;
        }
    }
    if (recovered_now) d.reasons.push_back(Reason::Recovered);

    // Interval and mean the decision was made against (post-transition,
    // pre-update).
    if (auto band = window.interval()) {
        d.interval = *band;
        d.mean = window.effective_mean();
    }

    // Rule 6: accepted outcomes feed the window with the authorized amount.
    if (d.accepted()) {
        window.observe(d.authorized_amount(txn.amount));
        if (ctrl.mode == ControlMode::UnderAttack) ctrl.txns_since_attack += 1;
    }

    d.mode_after = ctrl.mode;
    return d;
}

}  // namespace cardguard
