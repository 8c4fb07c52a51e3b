#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cardguard/config.hpp"
#include "cardguard/money.hpp"

namespace cardguard {

struct WindowParams {
    int capacity = 20;         // N, number of amounts retained
    double forgetting = 0.9;   // lambda: weight of the previous step relative to the newest
    double multiplier = 3.0;   // c: interval half-width in deviations
    double floor_rel = 0.1;    // rho: relative deviation floor
    double floor_abs = 1.0;    // a0: absolute deviation floor, dollars

    static WindowParams from_config(const EngineConfig& cfg) {
        return {cfg.window_size, cfg.forgetting_factor, cfg.interval_multiplier,
                cfg.std_floor_rel, to_dollars(cfg.std_floor_abs)};
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const Interval&) const = default;
};

enum class AmountClass : std::uint8_t { Inlier, UpperOutlier };

// Sliding window of accepted amounts with exponential forgetting. The newest
// amount has weight 1, the one before it lambda, then lambda^2, and so on;
// evicted amounts have exactly zero influence. Statistics are recomputed over
// the buffer on demand — the window is deliberately short, so a full pass is
// cheaper than keeping incremental sums honest across evictions.
class ForgettingWindow {
public:
    struct Snapshot {
        std::vector<Cents> buffer;  // oldest -> newest
        double mean = 0.0;
        double deviation = 0.0;
    };

    ForgettingWindow() : ForgettingWindow(WindowParams{}) {}
    explicit ForgettingWindow(WindowParams params);

    // Appends an accepted amount, evicting the oldest when full. The collapse
    // flag is untouched. Throws std::invalid_argument on a negative amount.
    void observe(Cents amount);

    // Weighted mean / weighted population deviation over the buffer, dollars.
    // Empty buffer -> nullopt (warm-up).
    std::optional<double> mean() const;
    std::optional<double> deviation() const;

    // Two-endpoint band [max(0, m - c*s_eff), m + c*s_eff] with
    // s_eff = max(s, rho*m + a0). Collapsed -> (0, 0). Fewer than
    // min(3, N) amounts and not collapsed -> nullopt (no estimate).
    std::optional<Interval> interval() const;

    // UpperOutlier iff amount > interval hi. Only upper exceedance flags
    // fraud; the low endpoint is diagnostic.
    std::optional<AmountClass> classify(Cents amount) const;

    // Zeroes the band so every positive amount is an outlier, snapshotting the
    // pre-attack statistics. Returns false (no-op) when already collapsed.
    bool collapse();

    // Restores the snapshot exactly. Returns false when not collapsed.
    bool reset();

    bool collapsed() const { return collapsed_; }
    int size() const { return size_; }
    bool has_estimate() const { return collapsed_ || size_ >= min_observations(); }
    int min_observations() const { return params_.capacity < 3 ? params_.capacity : 3; }

    // Mean as reported downstream: zero while collapsed.
    double effective_mean() const;

    std::vector<Cents> contents() const;  // oldest -> newest
    const WindowParams& params() const { return params_; }
    const std::optional<Snapshot>& snapshot() const { return snapshot_; }

    static ForgettingWindow from_parts(WindowParams params, std::vector<Cents> buffer,
                                       bool collapsed, std::optional<Snapshot> snapshot);

private:
    WindowParams params_;
    std::vector<Cents> ring_;
    int head_ = 0;  // index of the oldest element
    int size_ = 0;
    bool collapsed_ = false;
    std::optional<Snapshot> snapshot_;

    Cents at(int i) const {  // i = 0 oldest .. size_-1 newest
        return ring_[static_cast<std::size_t>((head_ + i) % params_.capacity)];
    }
    double weighted_mean_unchecked() const;
    double weighted_deviation_unchecked(double m) const;
};

}  // namespace cardguard
