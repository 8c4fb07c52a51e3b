#include "cardguard/engine.hpp"

#include <algorithm>

#include <json.hpp>

namespace cardguard {

namespace {

constexpr int kCheckpointVersion = 1;
constexpr const char* kCheckpointFormat = "cardguard-checkpoint";

using json = nlohmann::json;

json config_to_json(const EngineConfig& cfg) {
    json score;
    json tiers = json::array();
    for (const auto& t : cfg.score_table.gap_tiers)
        tiers.push_back({{"max_gap_seconds", t.max_gap_seconds}, {"score", t.score}});
    score["gap_tiers"] = tiers;
    json mcc = json::object();
    for (const auto& [code, s] : cfg.score_table.mcc_risk) mcc[std::to_string(code)] = s;
    score["mcc_risk"] = mcc;
    score["mcc_default"] = cfg.score_table.mcc_default;
    score["night_hours"] = cfg.score_table.night_hours;
    score["night_score"] = cfg.score_table.night_score;
    score["unusualness_cutoff"] = cfg.score_table.unusualness_cutoff;
    score["unusualness_score"] = cfg.score_table.unusualness_score;
    score["geo_mismatch_score"] = cfg.score_table.geo_mismatch_score;
    json errors = json::object();
    for (const auto& [flag, s] : cfg.score_table.error_scores)
        errors[std::string(to_string(flag))] = s;
    score["error_scores"] = errors;

    return json{
        {"window_size", cfg.window_size},
        {"forgetting_factor", cfg.forgetting_factor},
        {"interval_multiplier", cfg.interval_multiplier},
        {"std_floor_rel", cfg.std_floor_rel},
        {"std_floor_abs", cfg.std_floor_abs},
        {"score_table", score},
        {"soft_threshold", cfg.soft_threshold},
        {"hard_threshold", cfg.hard_threshold},
        {"recovery_minutes", cfg.recovery_minutes},
        {"recovery_txns", cfg.recovery_txns},
        {"small_amount_cap", cfg.small_amount_cap},
        {"mcc_allowlist", cfg.mcc_allowlist},
        {"mcc_blocklist", cfg.mcc_blocklist},
        {"familiar_mcc_min", cfg.familiar_mcc_min},
    };
}

EngineConfig config_from_json(const json& j) {
    EngineConfig cfg;
    cfg.window_size = j.at("window_size").get<int>();
    cfg.forgetting_factor = j.at("forgetting_factor").get<double>();
    cfg.interval_multiplier = j.at("interval_multiplier").get<double>();
    cfg.std_floor_rel = j.at("std_floor_rel").get<double>();
    cfg.std_floor_abs = j.at("std_floor_abs").get<Cents>();
    const json& score = j.at("score_table");
    cfg.score_table.gap_tiers.clear();
    for (const auto& t : score.at("gap_tiers"))
        cfg.score_table.gap_tiers.push_back(
            {t.at("max_gap_seconds").get<std::int64_t>(), t.at("score").get<int>()});
    cfg.score_table.mcc_risk.clear();
    for (const auto& [code, s] : score.at("mcc_risk").items())
        cfg.score_table.mcc_risk[std::stoi(code)] = s.get<int>();
    cfg.score_table.mcc_default = score.at("mcc_default").get<int>();
    cfg.score_table.night_hours = score.at("night_hours").get<std::set<int>>();
    cfg.score_table.night_score = score.at("night_score").get<int>();
    cfg.score_table.unusualness_cutoff = score.at("unusualness_cutoff").get<double>();
    cfg.score_table.unusualness_score = score.at("unusualness_score").get<int>();
    cfg.score_table.geo_mismatch_score = score.at("geo_mismatch_score").get<int>();
    cfg.score_table.error_scores.clear();
    for (const auto& [name, s] : score.at("error_scores").items()) {
        auto flag = error_flag_from_string(name);
        if (!flag) throw CheckpointError("unknown error flag in checkpoint: " + name);
        cfg.score_table.error_scores[*flag] = s.get<int>();
    }
    cfg.soft_threshold = j.at("soft_threshold").get<int>();
    cfg.hard_threshold = j.at("hard_threshold").get<int>();
    cfg.recovery_minutes = j.at("recovery_minutes").get<std::int64_t>();
    cfg.recovery_txns = j.at("recovery_txns").get<std::int64_t>();
    cfg.small_amount_cap = j.at("small_amount_cap").get<Cents>();
    cfg.mcc_allowlist = j.at("mcc_allowlist").get<std::set<int>>();
    cfg.mcc_blocklist = j.at("mcc_blocklist").get<std::set<int>>();
    cfg.familiar_mcc_min = j.at("familiar_mcc_min").get<int>();
    return cfg;
}

json optional_ts(const std::optional<Timestamp>& t) {
    if (t) return *t;
    return nullptr;
}

std::optional<Timestamp> optional_ts_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<Timestamp>();
}

}  // namespace

DetectionEngine::DetectionEngine(EngineConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
}

DetectionEngine::CardState& DetectionEngine::card_state(const std::string& card_id) {
    auto it = cards_.find(card_id);
    if (it != cards_.end()) return it->second;
    CardState state{CardholderProfile(card_id, cfg_.familiar_mcc_min),
                    ForgettingWindow(WindowParams::from_config(cfg_)),
                    ControllerState{},
                    std::nullopt,
                    -1};
    return cards_.emplace(card_id, std::move(state)).first->second;
}

const DetectionEngine::CardState* DetectionEngine::card(const std::string& card_id) const {
    auto it = cards_.find(card_id);
    return it == cards_.end() ? nullptr : &it->second;
}

Decision DetectionEngine::process(const Transaction& txn) {
    if (!txn.well_formed())
        throw StreamError("malformed transaction for card " + txn.card_id + " seq " +
                          std::to_string(txn.seq_no));
    // Validate ordering before touching any state.
    if (auto it = cards_.find(txn.card_id); it != cards_.end()) {
        if (txn.seq_no <= it->second.last_seq)
            throw StreamError("seq_no not strictly increasing for card " + txn.card_id +
                              ": got " + std::to_string(txn.seq_no) + " after " +
                              std::to_string(it->second.last_seq));
    }

    CardState& state = card_state(txn.card_id);
    if (state.last_seen && txn.timestamp < *state.last_seen) counters_.time_warnings += 1;

    // Gap intensity is measured against the last transaction seen on the card
    // regardless of its outcome; the profile clock only advances on accepted
    // transactions.
    ScoreCard score = total_score(txn, state.last_seen, state.profile, cfg_.score_table,
                                  cfg_.soft_threshold, cfg_.hard_threshold);

    Decision decision = step(state.ctrl, state.window, score, txn, cfg_, txn.timestamp);

    if (decision.accepted()) state.profile.update(txn);
    state.last_seen = txn.timestamp;
    state.last_seq = txn.seq_no;

    counters_.processed += 1;
    switch (decision.action) {
        case Action::Allow: counters_.allowed += 1; break;
        case Action::Flag: counters_.flagged += 1; break;
        case Action::Block: counters_.blocked += 1; break;
        case Action::LimitAmount: counters_.limited += 1; break;
        case Action::StepUpAuth: counters_.stepup += 1; break;
        case Action::DataEnrichment: counters_.enrichment += 1; break;
    }
    return decision;
}

std::vector<Decision> DetectionEngine::process_stream(const std::vector<Transaction>& txns) {
    std::vector<Decision> out;
    out.reserve(txns.size());
    for (const auto& txn : txns) out.push_back(process(txn));
    return out;
}

std::string DetectionEngine::checkpoint() const {
    json cards = json::object();
    // Sorted keys keep the byte output deterministic.
    std::vector<const std::pair<const std::string, CardState>*> entries;
    entries.reserve(cards_.size());
    for (const auto& entry : cards_) entries.push_back(&entry);
    std::sort(entries.begin(), entries.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });

    for (const auto* entry : entries) {
        const CardState& s = entry->second;
        json profile{
            {"hours", s.profile.hour_histogram()},
            {"state_counts", s.profile.state_counts()},
            {"modal_state", s.profile.modal_state()},
            {"last_txn_time", optional_ts(s.profile.last_txn_time())},
            {"txn_count", s.profile.txn_count()},
        };
        json mccs = json::object();
        for (const auto& [code, n] : s.profile.mcc_counts()) mccs[std::to_string(code)] = n;
        profile["mcc_counts"] = mccs;

        json window{
            {"buffer", s.window.contents()},
            {"collapsed", s.window.collapsed()},
        };
        if (const auto& snap = s.window.snapshot()) {
            window["snapshot"] = json{{"buffer", snap->buffer},
                                      {"mean", snap->mean},
                                      {"deviation", snap->deviation}};
        } else {
            window["snapshot"] = nullptr;
        }

        json ctrl{
            {"mode", std::string(to_string(s.ctrl.mode))},
            {"attack_started_at", optional_ts(s.ctrl.attack_started_at)},
            {"txns_since_attack", s.ctrl.txns_since_attack},
            {"recovery_deadline", optional_ts(s.ctrl.recovery_deadline)},
            {"uncertain_streak", s.ctrl.uncertain_streak},
        };

        cards[entry->first] = json{
            {"profile", profile},
            {"window", window},
            {"controller", ctrl},
            {"last_seen", optional_ts(s.last_seen)},
            {"last_seq", s.last_seq},
        };
    }

    json counters{
        {"processed", counters_.processed}, {"allowed", counters_.allowed},
        {"flagged", counters_.flagged},     {"blocked", counters_.blocked},
        {"limited", counters_.limited},     {"stepup", counters_.stepup},
        {"enrichment", counters_.enrichment}, {"time_warnings", counters_.time_warnings},
    };

    json root{
        {"format", kCheckpointFormat},
        {"version", kCheckpointVersion},
        {"config", config_to_json(cfg_)},
        {"counters", counters},
        {"cards", cards},
    };
    return root.dump();
}

DetectionEngine DetectionEngine::restore(std::string_view bytes) {
    json root;
    try {
        root = json::parse(bytes);
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
    }
    try {
        if (root.at("format").get<std::string>() != kCheckpointFormat)
            throw CheckpointError("not a checkpoint file");
        if (root.at("version").get<int>() != kCheckpointVersion)
            throw CheckpointError("unsupported checkpoint version " +
                                  root.at("version").dump());

        DetectionEngine engine(config_from_json(root.at("config")));

        const json& counters = root.at("counters");
        engine.counters_.processed = counters.at("processed").get<std::int64_t>();
        engine.counters_.allowed = counters.at("allowed").get<std::int64_t>();
        engine.counters_.flagged = counters.at("flagged").get<std::int64_t>();
        engine.counters_.blocked = counters.at("blocked").get<std::int64_t>();
        engine.counters_.limited = counters.at("limited").get<std::int64_t>();
        engine.counters_.stepup = counters.at("stepup").get<std::int64_t>();
        engine.counters_.enrichment = counters.at("enrichment").get<std::int64_t>();
        engine.counters_.time_warnings = counters.at("time_warnings").get<std::int64_t>();

        for (const auto& [card_id, c] : root.at("cards").items()) {
            const json& profile = c.at("profile");
            std::array<std::int64_t, 24> hours{};
            const json& hours_json = profile.at("hours");
            if (hours_json.size() != hours.size())
                throw CheckpointError("bad hour histogram size");
            for (std::size_t i = 0; i < hours.size(); ++i)
                hours[i] = hours_json[i].get<std::int64_t>();
            std::map<std::string, std::int64_t> state_counts;
            for (const auto& [st, n] : profile.at("state_counts").items())
                state_counts[st] = n.get<std::int64_t>();
            std::map<int, std::int64_t> mcc_counts;
            for (const auto& [code, n] : profile.at("mcc_counts").items())
                mcc_counts[std::stoi(code)] = n.get<std::int64_t>();

            CardState state{
                CardholderProfile::from_parts(
                    card_id, engine.cfg_.familiar_mcc_min, hours, std::move(state_counts),
                    profile.at("modal_state").get<std::string>(), std::move(mcc_counts),
                    optional_ts_from(profile.at("last_txn_time")),
                    profile.at("txn_count").get<std::int64_t>()),
                ForgettingWindow(WindowParams::from_config(engine.cfg_)),
                ControllerState{},
                optional_ts_from(c.at("last_seen")),
                c.at("last_seq").get<std::int64_t>()};

            const json& window = c.at("window");
            std::optional<ForgettingWindow::Snapshot> snap;
            if (!window.at("snapshot").is_null()) {
                ForgettingWindow::Snapshot s;
                s.buffer = window.at("snapshot").at("buffer").get<std::vector<Cents>>();
                s.mean = window.at("snapshot").at("mean").get<double>();
                s.deviation = window.at("snapshot").at("deviation").get<double>();
                snap = std::move(s);
            }
            state.window = ForgettingWindow::from_parts(
                WindowParams::from_config(engine.cfg_),
                window.at("buffer").get<std::vector<Cents>>(),
                window.at("collapsed").get<bool>(), std::move(snap));

            const json& ctrl = c.at("controller");
            auto mode = control_mode_from_string(ctrl.at("mode").get<std::string>());
            if (!mode) throw CheckpointError("unknown controller mode");
            state.ctrl.mode = *mode;
            state.ctrl.attack_started_at = optional_ts_from(ctrl.at("attack_started_at"));
            state.ctrl.txns_since_attack = ctrl.at("txns_since_attack").get<std::int64_t>();
            state.ctrl.recovery_deadline = optional_ts_from(ctrl.at("recovery_deadline"));
            state.ctrl.uncertain_streak = ctrl.at("uncertain_streak").get<int>();

            engine.cards_.emplace(card_id, std::move(state));
        }
        return engine;
    } catch (const CheckpointError&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointError(std::string("invalid checkpoint: ") + e.what());
    }
}

}  // namespace cardguard
