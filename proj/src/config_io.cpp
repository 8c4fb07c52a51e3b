#include "cardguard/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cardguard/time.hpp"

namespace cardguard {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// Ordered key/value pairs with consumption tracking so unknown keys surface.
class KvFile {
public:
    explicit KvFile(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        while (std::getline(in, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(path + ": line without '=': " + line);
            std::string key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError(path + ": empty key");
            entries_.push_back({key, trim(line.substr(eq + 1)), false});
        }
    }

    std::optional<std::string> get(const std::string& key) {
        std::optional<std::string> found;
        for (auto& e : entries_) {
            if (e.key == key) {
                if (found) throw ConfigError(path_ + ": duplicate key '" + key + "'");
                e.used = true;
                found = e.value;
            }
        }
        return found;
    }

    std::vector<std::string> get_all(const std::string& key) {
        std::vector<std::string> out;
        for (auto& e : entries_) {
            if (e.key == key) {
                e.used = true;
                out.push_back(e.value);
            }
        }
        return out;
    }

    // All unconsumed keys matching a prefix, e.g. "score.mcc.".
    std::vector<std::pair<std::string, std::string>> take_prefixed(const std::string& prefix) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& e : entries_) {
            if (!e.used && e.key.rfind(prefix, 0) == 0) {
                e.used = true;
                out.push_back({e.key.substr(prefix.size()), e.value});
            }
        }
        return out;
    }

    void reject_unknown() const {
        for (const auto& e : entries_)
            if (!e.used) throw ConfigError(path_ + ": unknown key '" + e.key + "'");
    }

    const std::string& path() const { return path_; }

private:
    struct Entry {
        std::string key, value;
        bool used;
    };
    std::string path_;
    std::vector<Entry> entries_;
};

std::int64_t to_int(const KvFile& f, const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError(f.path() + ": key '" + key + "' needs an integer, got '" + value + "'");
    return out;
}

double to_double(const KvFile& f, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double out = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(f.path() + ": key '" + key + "' needs a number, got '" + value + "'");
    }
}

Cents to_money(const KvFile& f, const std::string& key, const std::string& value) {
    auto cents = parse_money(value);
    if (!cents)
        throw ConfigError(f.path() + ": key '" + key + "' needs a money value, got '" + value +
                          "'");
    return *cents;
}

// "0-5" or "0,1,2"; inclusive range form.
std::pair<int, int> to_hour_range(const KvFile& f, const std::string& key,
                                  const std::string& value) {
    std::size_t dash = value.find('-');
    if (dash == std::string::npos)
        throw ConfigError(f.path() + ": key '" + key + "' needs an hour range like '0-5'");
    int b = static_cast<int>(to_int(f, key, trim(value.substr(0, dash))));
    int e = static_cast<int>(to_int(f, key, trim(value.substr(dash + 1))));
    if (b < 0 || e > 23 || b > e)
        throw ConfigError(f.path() + ": key '" + key + "' hour range out of order");
    return {b, e};
}

std::set<int> to_int_set(const KvFile& f, const std::string& key, const std::string& value) {
    std::set<int> out;
    if (trim(value).empty()) return out;
    for (const auto& item : split(value, ','))
        out.insert(static_cast<int>(to_int(f, key, item)));
    return out;
}

std::vector<int> to_int_list(const KvFile& f, const std::string& key, const std::string& value) {
    std::vector<int> out;
    if (trim(value).empty()) return out;
    for (const auto& item : split(value, ','))
        out.push_back(static_cast<int>(to_int(f, key, item)));
    return out;
}

}  // namespace

EngineConfig load_engine_config(const std::string& path) {
    KvFile f(path);
    EngineConfig cfg;

    if (auto v = f.get("window_size")) cfg.window_size = static_cast<int>(to_int(f, "window_size", *v));
    if (auto v = f.get("forgetting_factor"))
        cfg.forgetting_factor = to_double(f, "forgetting_factor", *v);
    if (auto v = f.get("interval_multiplier"))
        cfg.interval_multiplier = to_double(f, "interval_multiplier", *v);
    if (auto v = f.get("std_floor_rel")) cfg.std_floor_rel = to_double(f, "std_floor_rel", *v);
    if (auto v = f.get("std_floor_abs")) cfg.std_floor_abs = to_money(f, "std_floor_abs", *v);
    if (auto v = f.get("soft_threshold"))
        cfg.soft_threshold = static_cast<int>(to_int(f, "soft_threshold", *v));
    if (auto v = f.get("hard_threshold"))
        cfg.hard_threshold = static_cast<int>(to_int(f, "hard_threshold", *v));
    if (auto v = f.get("recovery_minutes")) cfg.recovery_minutes = to_int(f, "recovery_minutes", *v);
    if (auto v = f.get("recovery_txns")) cfg.recovery_txns = to_int(f, "recovery_txns", *v);
    if (auto v = f.get("small_amount_cap"))
        cfg.small_amount_cap = to_money(f, "small_amount_cap", *v);
    if (auto v = f.get("mcc_allowlist")) cfg.mcc_allowlist = to_int_set(f, "mcc_allowlist", *v);
    if (auto v = f.get("mcc_blocklist")) cfg.mcc_blocklist = to_int_set(f, "mcc_blocklist", *v);
    if (auto v = f.get("familiar_mcc_min"))
        cfg.familiar_mcc_min = static_cast<int>(to_int(f, "familiar_mcc_min", *v));

    ScoreTable& t = cfg.score_table;
    if (auto v = f.get("score.gap_tiers")) {
        t.gap_tiers.clear();
        if (!trim(*v).empty()) {
            for (const auto& item : split(*v, ',')) {
                std::size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw ConfigError(path + ": key 'score.gap_tiers' needs 'seconds:score' pairs");
                t.gap_tiers.push_back(
                    {to_int(f, "score.gap_tiers", trim(item.substr(0, colon))),
                     static_cast<int>(to_int(f, "score.gap_tiers", trim(item.substr(colon + 1))))});
            }
        }
        for (std::size_t i = 1; i < t.gap_tiers.size(); ++i)
            if (t.gap_tiers[i].max_gap_seconds <= t.gap_tiers[i - 1].max_gap_seconds)
                throw ConfigError(path + ": key 'score.gap_tiers' must ascend by max gap");
    }
    if (auto v = f.get("score.mcc.default"))
        t.mcc_default = static_cast<int>(to_int(f, "score.mcc.default", *v));
    auto mcc_overrides = f.take_prefixed("score.mcc.");
    if (!mcc_overrides.empty()) {
        t.mcc_risk.clear();  // the file defines the complete high-risk set
        for (const auto& [code, value] : mcc_overrides)
            t.mcc_risk[static_cast<int>(to_int(f, "score.mcc." + code, code))] =
                static_cast<int>(to_int(f, "score.mcc." + code, value));
    }
    if (auto v = f.get("score.night_hours")) {
        auto [b, e] = to_hour_range(f, "score.night_hours", *v);
        t.night_hours.clear();
        for (int h = b; h <= e; ++h) t.night_hours.insert(h);
    }
    if (auto v = f.get("score.night_score"))
        t.night_score = static_cast<int>(to_int(f, "score.night_score", *v));
    if (auto v = f.get("score.unusualness_cutoff"))
        t.unusualness_cutoff = to_double(f, "score.unusualness_cutoff", *v);
    if (auto v = f.get("score.unusualness_score"))
        t.unusualness_score = static_cast<int>(to_int(f, "score.unusualness_score", *v));
    if (auto v = f.get("score.geo_mismatch_score"))
        t.geo_mismatch_score = static_cast<int>(to_int(f, "score.geo_mismatch_score", *v));
    for (const auto& [name, value] : f.take_prefixed("score.error.")) {
        auto flag = error_flag_from_string(name);
        if (!flag) throw ConfigError(path + ": unknown error flag in key 'score.error." + name + "'");
        t.error_scores[*flag] = static_cast<int>(to_int(f, "score.error." + name, value));
    }

    f.reject_unknown();
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

GenParams load_gen_params(const std::string& path) {
    KvFile f(path);
    GenParams p;
    if (auto v = f.get("seed")) p.seed = static_cast<std::uint64_t>(to_int(f, "seed", *v));
    if (auto v = f.get("n_cards")) p.n_cards = static_cast<int>(to_int(f, "n_cards", *v));
    if (auto v = f.get("txns_per_card"))
        p.txns_per_card = static_cast<int>(to_int(f, "txns_per_card", *v));
    if (auto v = f.get("spend_mean")) p.spend_mean = to_dollars(to_money(f, "spend_mean", *v));
    if (auto v = f.get("spend_cv")) p.spend_cv = to_double(f, "spend_cv", *v);
    if (auto v = f.get("active_hours")) {
        auto [b, e] = to_hour_range(f, "active_hours", *v);
        p.active_hour_begin = b;
        p.active_hour_end = e;
    }
    if (auto v = f.get("state_pool")) {
        p.state_pool.clear();
        for (const auto& s : split(*v, ','))
            if (!s.empty()) p.state_pool.push_back(s);
    }
    if (auto v = f.get("benign_gap_minutes"))
        p.benign_gap_mean_minutes = to_double(f, "benign_gap_minutes", *v);
    if (auto v = f.get("mcc_pool")) {
        p.mcc_pool.clear();
        for (const auto& item : split(*v, ',')) {
            std::size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw ConfigError(path + ": key 'mcc_pool' needs 'mcc:weight' pairs");
            p.mcc_pool.push_back(
                {static_cast<int>(to_int(f, "mcc_pool", trim(item.substr(0, colon)))),
                 to_double(f, "mcc_pool", trim(item.substr(colon + 1)))});
        }
    }
    if (auto v = f.get("start_time")) {
        auto ts = parse_timestamp(*v);
        if (!ts)
            throw ConfigError(path + ": key 'start_time' needs 'YYYY-MM-DD HH:MM', got '" + *v +
                              "'");
        p.start_time = *ts;
    }
    if (auto v = f.get("error_prob")) p.error_prob = to_double(f, "error_prob", *v);
    if (auto v = f.get("online_prob")) p.online_prob = to_double(f, "online_prob", *v);
    f.reject_unknown();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return p;
}

AttackPlan load_attack_plan(const std::string& path) {
    KvFile f(path);
    AttackPlan plan;
    AttackParams p;
    if (auto v = f.get("seed")) plan.seed = static_cast<std::uint64_t>(to_int(f, "seed", *v));
    if (auto v = f.get("n_low")) p.n_low = static_cast<int>(to_int(f, "n_low", *v));
    if (auto v = f.get("low_amount_min")) p.low_amount_min = to_money(f, "low_amount_min", *v);
    if (auto v = f.get("low_amount_max")) p.low_amount_max = to_money(f, "low_amount_max", *v);
    if (auto v = f.get("high_amount_multiplier"))
        p.high_amount_multiplier = to_double(f, "high_amount_multiplier", *v);
    if (auto v = f.get("attack_gap_min_s"))
        p.attack_gap_min_s = static_cast<int>(to_int(f, "attack_gap_min_s", *v));
    if (auto v = f.get("attack_gap_max_s"))
        p.attack_gap_max_s = static_cast<int>(to_int(f, "attack_gap_max_s", *v));
    if (auto v = f.get("attack_mccs")) {
        p.attack_mcc_pool = to_int_list(f, "attack_mccs", *v);
        if (p.attack_mcc_pool.empty())
            throw ConfigError(path + ": key 'attack_mccs' must not be empty");
    }
    if (auto v = f.get("error_prob")) p.error_prob = to_double(f, "error_prob", *v);
    if (auto v = f.get("attack_hours")) {
        auto [b, e] = to_hour_range(f, "attack_hours", *v);
        p.attack_hour_begin = b;
        p.attack_hour_end = e;
    }
    if (auto v = f.get("duration_txns"))
        p.duration_txns = static_cast<int>(to_int(f, "duration_txns", *v));

    // attack = <card_id> @ <YYYY-MM-DD HH:MM>
    for (const auto& value : f.get_all("attack")) {
        std::size_t at = value.find('@');
        if (at == std::string::npos)
            throw ConfigError(path + ": key 'attack' needs '<card_id> @ <time>', got '" + value +
                              "'");
        AttackSpec spec;
        spec.card_id = trim(value.substr(0, at));
        auto ts = parse_timestamp(trim(value.substr(at + 1)));
        if (spec.card_id.empty() || !ts)
            throw ConfigError(path + ": key 'attack' needs '<card_id> @ <time>', got '" + value +
                              "'");
        spec.start_time = *ts;
        spec.params = p;
        plan.attacks.push_back(std::move(spec));
    }
    f.reject_unknown();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return plan;
}

SweepGrid load_sweep_grid(const std::string& path) {
    KvFile f(path);
    SweepGrid g;
    if (auto v = f.get("window_size"))
        g.window_size = to_int_list(f, "window_size", *v);
    if (auto v = f.get("forgetting_factor"))
        for (const auto& item : split(*v, ','))
            g.forgetting_factor.push_back(to_double(f, "forgetting_factor", item));
    if (auto v = f.get("interval_multiplier"))
        for (const auto& item : split(*v, ','))
            g.interval_multiplier.push_back(to_double(f, "interval_multiplier", item));
    if (auto v = f.get("soft_threshold")) g.soft_threshold = to_int_list(f, "soft_threshold", *v);
    if (auto v = f.get("hard_threshold")) g.hard_threshold = to_int_list(f, "hard_threshold", *v);
    f.reject_unknown();
    return g;
}

std::map<std::string, std::string> load_header_remap(const std::string& path) {
    KvFile f(path);
    std::map<std::string, std::string> remap;
    for (const auto& [key, value] : f.take_prefixed(""))
        remap[key] = value;
    return remap;
}

}  // namespace cardguard
