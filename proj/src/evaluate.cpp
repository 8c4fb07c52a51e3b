#include "cardguard/evaluate.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cardguard/engine.hpp"

namespace cardguard {

namespace {

bool positive_prediction(Action a) { return a != Action::Allow; }

bool blockish(Action a) { return a == Action::Block || a == Action::LimitAmount; }

}  // namespace

EvalReport evaluate(const std::vector<Decision>& decisions,
                    const std::vector<Transaction>& stream) {
    if (decisions.size() != stream.size())
        throw std::invalid_argument("decision/stream length mismatch: " +
                                    std::to_string(decisions.size()) + " vs " +
                                    std::to_string(stream.size()));

    EvalReport r;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        bool fraud = stream[i].fraud_label.value_or(false);
        bool positive = positive_prediction(decisions[i].action);
        if (fraud && positive) r.true_positives += 1;
        if (fraud && !positive) r.false_negatives += 1;
        if (!fraud && positive) r.false_positives += 1;
        if (!fraud && !positive) r.true_negatives += 1;

        if (fraud) {
            Cents amount = stream[i].amount;
            switch (decisions[i].action) {
                case Action::Block:
                case Action::StepUpAuth:      // fraudster cannot answer the challenge
                case Action::DataEnrichment:
                    r.loss_prevented += amount;
                    break;
                case Action::LimitAmount: {
                    Cents authorized = decisions[i].authorized_amount(amount);
                    r.loss_incurred += authorized;
                    r.loss_prevented += amount - authorized;
                    break;
                }
                case Action::Allow:
                case Action::Flag:
                    r.loss_incurred += amount;
                    break;
            }
        }
    }

    std::int64_t positives = r.true_positives + r.false_positives;
    std::int64_t fraud_total = r.true_positives + r.false_negatives;
    std::int64_t benign_total = r.false_positives + r.true_negatives;
    r.zero_positives = positives == 0;
    r.zero_fraud = fraud_total == 0;
    r.precision = r.zero_positives
                      ? 1.0
                      : static_cast<double>(r.true_positives) / static_cast<double>(positives);
    r.recall = r.zero_fraud
                   ? 1.0
                   : static_cast<double>(r.true_positives) / static_cast<double>(fraud_total);
    r.false_positive_rate =
        benign_total == 0
            ? 0.0
            : static_cast<double>(r.false_positives) / static_cast<double>(benign_total);

    // Attacks are maximal runs of consecutive fraud transactions within each
    // card's subsequence, in stream order.
    std::map<std::string, std::vector<std::size_t>> by_card;
    for (std::size_t i = 0; i < stream.size(); ++i)
        by_card[stream[i].card_id].push_back(i);

    double latency_sum = 0.0;
    std::int64_t post_total = 0, post_blocked = 0;
    for (const auto& [card_id, indices] : by_card) {
        std::size_t i = 0;
        while (i < indices.size()) {
            if (!stream[indices[i]].fraud_label.value_or(false)) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < indices.size() && stream[indices[j]].fraud_label.value_or(false)) ++j;
            r.n_attacks += 1;

            std::size_t detect = j - i;  // sentinel: not detected
            for (std::size_t k = i; k < j; ++k) {
                const Decision& d = decisions[indices[k]];
                if (d.action == Action::Block || d.has_reason(Reason::AttackStart)) {
                    detect = k - i;
                    break;
                }
            }
            if (detect < j - i) {
                r.n_attacks_detected += 1;
                latency_sum += static_cast<double>(detect);
                for (std::size_t k = i + detect; k < j; ++k) {
                    post_total += 1;
                    if (blockish(decisions[indices[k]].action)) post_blocked += 1;
                }
            }
            i = j;
        }
    }
    r.detection_latency = r.n_attacks_detected == 0
                              ? 0.0
                              : latency_sum / static_cast<double>(r.n_attacks_detected);
    r.post_detection_block_rate =
        post_total == 0 ? 1.0
                        : static_cast<double>(post_blocked) / static_cast<double>(post_total);
    return r;
}

std::string format_report(const EvalReport& r) {
    std::ostringstream out;
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return std::string(buf);
    };
    out << "precision=" << num(r.precision) << (r.zero_positives ? " (no positives)" : "")
        << " recall=" << num(r.recall) << (r.zero_fraud ? " (no fraud in stream)" : "")
        << " fpr=" << num(r.false_positive_rate) << "\n";
    out << "attacks=" << r.n_attacks << " detected=" << r.n_attacks_detected
        << " detection_latency=" << num(r.detection_latency)
        << " post_detection_block_rate=" << num(r.post_detection_block_rate) << "\n";
    out << "loss_prevented=" << format_money(r.loss_prevented)
        << " loss_incurred=" << format_money(r.loss_incurred) << "\n";
    out << "tp=" << r.true_positives << " fp=" << r.false_positives
        << " tn=" << r.true_negatives << " fn=" << r.false_negatives << "\n";
    return out.str();
}

std::vector<SweepRow> sweep(const SweepGrid& grid, const GenParams& gen,
                            const std::vector<AttackSpec>& attacks, std::uint64_t attack_seed,
                            const EngineConfig& base) {
    std::vector<SweepRow> rows;
    if (grid.empty()) return rows;

    // One stream for all points: every run sees identical data.
    std::vector<Transaction> stream = inject_attacks(generate(gen), attacks, attack_seed);

    for (int n : grid.window_size)
        for (double lambda : grid.forgetting_factor)
            for (double c : grid.interval_multiplier)
                for (int soft : grid.soft_threshold)
                    for (int hard : grid.hard_threshold) {
                        if (!(hard > soft && soft > 0)) continue;  // invalid combination
                        EngineConfig cfg = base;
                        cfg.window_size = n;
                        cfg.forgetting_factor = lambda;
                        cfg.interval_multiplier = c;
                        cfg.soft_threshold = soft;
                        cfg.hard_threshold = hard;
                        DetectionEngine engine(cfg);
                        auto decisions = engine.process_stream(stream);
                        SweepRow row;
                        row.point = {n, lambda, c, soft, hard};
                        row.report = evaluate(decisions, stream);
                        rows.push_back(std::move(row));
                    }

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.report.recall != b.report.recall) return a.report.recall > b.report.recall;
        if (a.report.false_positive_rate != b.report.false_positive_rate)
            return a.report.false_positive_rate < b.report.false_positive_rate;
        auto key = [](const SweepPoint& p) {
            return std::make_tuple(p.window_size, p.forgetting_factor, p.interval_multiplier,
                                   p.soft_threshold, p.hard_threshold);
        };
        return key(a.point) < key(b.point);
    });
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "window_size,forgetting_factor,interval_multiplier,soft_threshold,hard_threshold,"
           "precision,recall,fpr,detection_latency,post_detection_block_rate,"
           "loss_prevented,loss_incurred,attacks,attacks_detected\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    for (const auto& row : rows) {
        out << row.point.window_size << ',' << num(row.point.forgetting_factor) << ','
            << num(row.point.interval_multiplier) << ',' << row.point.soft_threshold << ','
            << row.point.hard_threshold << ',' << num(row.report.precision) << ','
            << num(row.report.recall) << ',' << num(row.report.false_positive_rate) << ','
            << num(row.report.detection_latency) << ','
            << num(row.report.post_detection_block_rate) << ','
            << format_money(row.report.loss_prevented) << ','
            << format_money(row.report.loss_incurred) << ',' << row.report.n_attacks << ','
            << row.report.n_attacks_detected << '\n';
    }
    return out.str();
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        j["window_size"] = row.point.window_size;
        j["forgetting_factor"] = row.point.forgetting_factor;
        j["interval_multiplier"] = row.point.interval_multiplier;
        j["soft_threshold"] = row.point.soft_threshold;
        j["hard_threshold"] = row.point.hard_threshold;
        j["precision"] = row.report.precision;
        j["recall"] = row.report.recall;
        j["fpr"] = row.report.false_positive_rate;
        j["detection_latency"] = row.report.detection_latency;
        j["post_detection_block_rate"] = row.report.post_detection_block_rate;
        j["loss_prevented"] = format_money(row.report.loss_prevented);
        j["loss_incurred"] = format_money(row.report.loss_incurred);
        j["attacks"] = row.report.n_attacks;
        j["attacks_detected"] = row.report.n_attacks_detected;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace cardguard
