#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cardguard/config.hpp"
#include "cardguard/controller.hpp"
#include "cardguard/simulate.hpp"
#include "cardguard/types.hpp"

namespace cardguard {

// Detection quality against ground-truth labels. A positive prediction is any
// decision other than Allow (Block, LimitAmount, StepUpAuth, DataEnrichment,
// Flag). Loss accounting is exact in cents: every fraudulent cent is either
// prevented or incurred.
struct EvalReport {
    double precision = 1.0;  // 1.0 with zero_positives set when nothing was flagged
    double recall = 1.0;     // 1.0 with zero_fraud set when the stream has no fraud
    double false_positive_rate = 0.0;
    bool zero_positives = false;
    bool zero_fraud = false;

    // Mean 0-based index, within each attack, of the first Block or
    // ATTACK_START decision; over detected attacks only.
    double detection_latency = 0.0;
    // Fraction of attack transactions at or after the detection index that
    // were Blocked or LimitAmount-capped, pooled over detected attacks.
    double post_detection_block_rate = 1.0;

    Cents loss_prevented = 0;
    Cents loss_incurred = 0;

    std::int64_t true_positives = 0;
    std::int64_t false_positives = 0;
    std::int64_t true_negatives = 0;
    std::int64_t false_negatives = 0;
    std::int64_t n_attacks = 0;           // maximal runs of consecutive fraud per card
    std::int64_t n_attacks_detected = 0;
};

// Decisions must align 1:1 with the stream; throws std::invalid_argument on a
// length mismatch.
EvalReport evaluate(const std::vector<Decision>& decisions,
                    const std::vector<Transaction>& stream);

std::string format_report(const EvalReport& report);

// Grid over the adjustable detection parameters.
struct SweepGrid {
    std::vector<int> window_size;
    std::vector<double> forgetting_factor;
    std::vector<double> interval_multiplier;
    std::vector<int> soft_threshold;
    std::vector<int> hard_threshold;

    bool empty() const {
        return window_size.empty() || forgetting_factor.empty() ||
               interval_multiplier.empty() || soft_threshold.empty() ||
               hard_threshold.empty();
    }
};

struct SweepPoint {
    int window_size = 0;
    double forgetting_factor = 0.0;
    double interval_multiplier = 0.0;
    int soft_threshold = 0;
    int hard_threshold = 0;
};

struct SweepRow {
    SweepPoint point;
    EvalReport report;
};

// One seeded simulate+detect+evaluate run per grid point (invalid threshold
// combinations are skipped). Rows are sorted by recall descending, then FPR
// ascending, then the parameters for stability.
std::vector<SweepRow> sweep(const SweepGrid& grid, const GenParams& gen,
                            const std::vector<AttackSpec>& attacks, std::uint64_t attack_seed,
                            const EngineConfig& base);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

}  // namespace cardguard
