#include "cardguard/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cardguard {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent deterministic substream per (seed, lane).
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t lane) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(lane)));
}

const std::unordered_map<std::string, std::string>& city_table() {
    static const std::unordered_map<std::string, std::string> cities = {
        {"CA", "Los Angeles"}, {"NY", "New York"}, {"TX", "Houston"},
        {"FL", "Miami"},       {"IL", "Chicago"},  {"WA", "Seattle"},
        {"AZ", "Phoenix"},     {"NV", "Las Vegas"}, {"OR", "Portland"},
        {"CO", "Denver"},
    };
    return cities;
}

std::string city_for(const std::string& state) {
    auto it = city_table().find(state);
    if (it != city_table().end()) return it->second;
    return state + " City";
}

std::string zip_for(const std::string& state) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : state) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    return std::to_string(10000 + h % 89999);
}

std::string merchant_name(std::mt19937_64& rng) {
    return "M" + std::to_string(1000000000ULL + rng() % 9000000000ULL);
}

Cents lognormal_cents(std::mt19937_64& rng, double mean_dollars, double cv) {
    double sigma2 = std::log1p(cv * cv);
    double mu = std::log(mean_dollars) - 0.5 * sigma2;
    std::normal_distribution<double> normal(mu, std::sqrt(sigma2));
    double dollars = std::exp(normal(rng));
    return std::max<Cents>(1, std::llround(dollars * 100.0));
}

Timestamp push_into_hours(Timestamp t, int begin, int end) {
    while (hour_of(t) < begin || hour_of(t) > end) t += 3600;
    return t;
}

Timestamp floor_minute(Timestamp t) { return t - (t % 60); }

}  // namespace

void GenParams::validate() const {
    if (n_cards < 1 || txns_per_card < 0) throw std::invalid_argument("card/txn counts must be positive");
    if (!(spend_mean > 0.0)) throw std::invalid_argument("spend_mean must be > 0");
    if (spend_cv < 0.0) throw std::invalid_argument("spend_cv must be >= 0");
    if (active_hour_begin < 0 || active_hour_end > 23 || active_hour_begin > active_hour_end)
        throw std::invalid_argument("active_hours must be a valid 0..23 range");
    if (state_pool.empty()) throw std::invalid_argument("state_pool must not be empty");
    if (!(benign_gap_mean_minutes > 0.0))
        throw std::invalid_argument("benign_gap_mean_minutes must be > 0");
    if (mcc_pool.empty()) throw std::invalid_argument("mcc_pool must not be empty");
    for (const auto& [mcc, w] : mcc_pool)
        if (mcc < 0 || mcc > 9999 || w < 0.0) throw std::invalid_argument("bad mcc_pool entry");
    if (error_prob < 0.0 || error_prob > 1.0 || online_prob < 0.0 || online_prob > 1.0)
        throw std::invalid_argument("probabilities must be in [0, 1]");
}

void AttackParams::validate() const {
    if (n_low < 0 || duration_txns < 1 || n_low >= duration_txns)
        throw std::invalid_argument("attack requires 0 <= n_low < duration_txns");
    if (low_amount_min < 0 || low_amount_max < low_amount_min)
        throw std::invalid_argument("bad low_amount range");
    if (high_amount_multiplier < 2.0)
        throw std::invalid_argument("high_amount_multiplier must be >= 2");
    if (attack_gap_min_s < 1 || attack_gap_max_s < attack_gap_min_s)
        throw std::invalid_argument("bad attack gap range");
    if (attack_mcc_pool.empty()) throw std::invalid_argument("attack_mcc_pool must not be empty");
    if (error_prob < 0.0 || error_prob > 1.0)
        throw std::invalid_argument("error_prob must be in [0, 1]");
    if (attack_hour_begin < 0 || attack_hour_end > 23 || attack_hour_begin > attack_hour_end)
        throw std::invalid_argument("attack_hours must be a valid 0..23 range");
}

std::vector<Transaction> generate(const GenParams& params) {
    params.validate();
    Timestamp start = params.start_time != 0 ? params.start_time
                                             : make_timestamp(2024, 1, 1, 8, 0);

    double total_weight = 0.0;
    for (const auto& [mcc, w] : params.mcc_pool) total_weight += w;
    if (!(total_weight > 0.0)) throw std::invalid_argument("mcc_pool weights sum to zero");

    std::vector<Transaction> stream;
    stream.reserve(static_cast<std::size_t>(params.n_cards) *
                   static_cast<std::size_t>(params.txns_per_card));

    for (int card = 0; card < params.n_cards; ++card) {
        auto rng = substream(params.seed, static_cast<std::uint64_t>(card));
        const std::string card_id = "u" + std::to_string(card) + "c0";
        const std::string& home_state =
            params.state_pool[rng() % params.state_pool.size()];
        const std::string home_city = city_for(home_state);
        const std::string home_zip = zip_for(home_state);

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::exponential_distribution<double> gap(1.0 /
                                                  (params.benign_gap_mean_minutes * 60.0));

        // Cards start out of phase across the first day.
        Timestamp t = start + static_cast<Timestamp>(rng() % 86400);
        t = push_into_hours(t, params.active_hour_begin, params.active_hour_end);

        for (int i = 0; i < params.txns_per_card; ++i) {
            Transaction txn;
            txn.card_id = card_id;
            txn.seq_no = i;
            txn.timestamp = floor_minute(t);
            txn.amount = lognormal_cents(rng, params.spend_mean, params.spend_cv);

            double pick = unit(rng) * total_weight;
            txn.mcc = params.mcc_pool.back().first;
            for (const auto& [mcc, w] : params.mcc_pool) {
                if (pick < w) {
                    txn.mcc = mcc;
                    break;
                }
                pick -= w;
            }

            txn.merchant_name = merchant_name(rng);
            if (unit(rng) < params.online_prob) {
                txn.channel = Channel::Online;
                txn.merchant_city = std::string(kOnlineState);
                txn.merchant_state = std::string(kOnlineState);
            } else {
                txn.channel = unit(rng) < 0.7 ? Channel::Chip : Channel::Swipe;
                txn.merchant_city = home_city;
                txn.merchant_state = home_state;
                txn.zip = home_zip;
            }
            if (unit(rng) < params.error_prob)
                txn.errors.add(static_cast<ErrorFlag>(rng() % (kErrorFlagCount - 1)));
            txn.fraud_label = false;

            stream.push_back(std::move(txn));

            t += std::max<Timestamp>(60, static_cast<Timestamp>(std::llround(gap(rng))));
            t = push_into_hours(t, params.active_hour_begin, params.active_hour_end);
        }
    }
    return stream;
}

std::vector<Transaction> inject_attacks(std::vector<Transaction> stream,
                                        const std::vector<AttackSpec>& attacks,
                                        std::uint64_t seed) {
    if (attacks.empty()) return stream;

    // Card span and empirical mean spend, from the stream as given.
    struct CardInfo {
        Timestamp first = 0, last = 0;
        double amount_sum = 0.0;
        std::int64_t count = 0;
    };
    std::map<std::string, CardInfo> cards;
    for (const auto& txn : stream) {
        auto [it, fresh] = cards.try_emplace(txn.card_id);
        CardInfo& info = it->second;
        if (fresh) {
            info.first = info.last = txn.timestamp;
        } else {
            info.first = std::min(info.first, txn.timestamp);
            info.last = std::max(info.last, txn.timestamp);
        }
        info.amount_sum += to_dollars(txn.amount);
        info.count += 1;
    }

    std::map<std::string, std::vector<std::pair<Timestamp, Timestamp>>> spans;

    for (std::size_t k = 0; k < attacks.size(); ++k) {
        const AttackSpec& spec = attacks[k];
        spec.params.validate();
        auto card_it = cards.find(spec.card_id);
        if (card_it == cards.end())
            throw std::invalid_argument("attack targets unknown card " + spec.card_id);
        const CardInfo& info = card_it->second;
        if (spec.start_time < info.first || spec.start_time > info.last)
            throw std::invalid_argument("attack start outside stream span for card " +
                                        spec.card_id);
        double mean_spend = info.amount_sum / static_cast<double>(info.count);

        const AttackParams& p = spec.params;
        auto rng = substream(seed, 0x41545441434bULL + k);  // per-attack lane
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<Cents> low_amount(p.low_amount_min, p.low_amount_max);
        std::uniform_int_distribution<int> gap_s(p.attack_gap_min_s, p.attack_gap_max_s);

        // Place the onset inside the attack-hour window with room for the
        // whole burst before the window closes.
        Timestamp t = push_into_hours(spec.start_time, p.attack_hour_begin, p.attack_hour_end);
        Timestamp day = t - (((t % 86400) + 86400) % 86400);
        Timestamp window_close = day + static_cast<Timestamp>(p.attack_hour_end + 1) * 3600;
        Timestamp worst_span =
            static_cast<Timestamp>(p.duration_txns) * p.attack_gap_max_s;
        if (t > window_close - worst_span)
            t = std::max(day + static_cast<Timestamp>(p.attack_hour_begin) * 3600,
                         window_close - worst_span);

        std::vector<Transaction> burst;
        burst.reserve(static_cast<std::size_t>(p.duration_txns));
        for (int i = 0; i < p.duration_txns; ++i) {
            Transaction txn;
            txn.card_id = spec.card_id;
            txn.timestamp = floor_minute(t);
            if (i < p.n_low) {
                txn.amount = low_amount(rng);
            } else {
                double dollars =
                    mean_spend * p.high_amount_multiplier * (0.8 + 0.4 * unit(rng));
                txn.amount = std::max<Cents>(1, std::llround(dollars * 100.0));
            }
            txn.mcc = p.attack_mcc_pool[rng() % p.attack_mcc_pool.size()];
            txn.merchant_name = merchant_name(rng);
            txn.merchant_city = std::string(kOnlineState);
            txn.merchant_state = std::string(kOnlineState);
            txn.channel = Channel::Online;
            if (unit(rng) < p.error_prob) txn.errors.add(ErrorFlag::TechnicalGlitch);
            if (unit(rng) < p.error_prob) txn.errors.add(ErrorFlag::BadCVV);
            txn.fraud_label = true;
            burst.push_back(std::move(txn));
            t += gap_s(rng);
        }

        auto& card_spans = spans[spec.card_id];
        std::pair<Timestamp, Timestamp> span{burst.front().timestamp,
                                             burst.back().timestamp};
        for (const auto& other : card_spans)
            if (span.first <= other.second && other.first <= span.second)
                throw std::invalid_argument("overlapping attacks on card " + spec.card_id);
        card_spans.push_back(span);

        for (auto& txn : burst) stream.push_back(std::move(txn));
    }

    // Keep insertion order for equal (card, minute) pairs, then renumber.
    std::stable_sort(stream.begin(), stream.end(), [](const Transaction& a, const Transaction& b) {
        if (a.card_id != b.card_id) return a.card_id < b.card_id;
        return a.timestamp < b.timestamp;
    });
    std::map<std::string, std::int64_t> next_seq;
    for (auto& txn : stream) txn.seq_no = next_seq[txn.card_id]++;
    return stream;
}

}  // namespace cardguard
