#include "cardguard/window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cardguard {

ForgettingWindow::ForgettingWindow(WindowParams params) : params_(params) {
    if (params_.capacity < 1) throw std::invalid_argument("window capacity must be >= 1");
    if (!(params_.forgetting > 0.0 && params_.forgetting <= 1.0))
        throw std::invalid_argument("forgetting factor must be in (0, 1]");
    ring_.assign(static_cast<std::size_t>(params_.capacity), 0);
}

void ForgettingWindow::observe(Cents amount) {
    if (amount < 0) throw std::invalid_argument("window observe: negative amount");
    if (size_ == params_.capacity) {
        ring_[static_cast<std::size_t>(head_)] = amount;
        head_ = (head_ + 1) % params_.capacity;
    } else {
        ring_[static_cast<std::size_t>((head_ + size_) % params_.capacity)] = amount;
        ++size_;
    }
}

double ForgettingWindow::weighted_mean_unchecked() const {
    // Newest to oldest so the running weight product starts at 1.
    double w = 1.0, wsum = 0.0, wx = 0.0;
    double lo = to_dollars(at(size_ - 1)), hi = lo;
    for (int i = size_ - 1; i >= 0; --i) {
        double x = to_dollars(at(i));
        wx += w * x;
        wsum += w;
        w *= params_.forgetting;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    // A convex combination; clamp away the last-ulp rounding excursions.
    return std::clamp(wx / wsum, lo, hi);
}

double ForgettingWindow::weighted_deviation_unchecked(double m) const {
    double w = 1.0, wsum = 0.0, wss = 0.0;
    for (int i = size_ - 1; i >= 0; --i) {
        double d = to_dollars(at(i)) - m;
        wss += w * d * d;
        wsum += w;
        w *= params_.forgetting;
    }
    return std::sqrt(wss / wsum);
}

std::optional<double> ForgettingWindow::mean() const {
    if (size_ == 0) return std::nullopt;
    return weighted_mean_unchecked();
}

std::optional<double> ForgettingWindow::deviation() const {
    if (size_ == 0) return std::nullopt;
    return weighted_deviation_unchecked(weighted_mean_unchecked());
}

std::optional<Interval> ForgettingWindow::interval() const {
    if (collapsed_) return Interval{0.0, 0.0};
    if (size_ < min_observations()) return std::nullopt;
    double m = weighted_mean_unchecked();
    double s = weighted_deviation_unchecked(m);
    double s_eff = std::max(s, params_.floor_rel * m + params_.floor_abs);
    double radius = params_.multiplier * s_eff;
    return Interval{std::max(0.0, m - radius), m + radius};
}

std::optional<AmountClass> ForgettingWindow::classify(Cents amount) const {
    auto band = interval();
    if (!band) return std::nullopt;
    return to_dollars(amount) > band->hi ? AmountClass::UpperOutlier : AmountClass::Inlier;
}

bool ForgettingWindow::collapse() {
    if (collapsed_) return false;
    Snapshot snap;
    snap.buffer = contents();
    if (size_ > 0) {
        snap.mean = weighted_mean_unchecked();
        snap.deviation = weighted_deviation_unchecked(snap.mean);
    }
    snapshot_ = std::move(snap);
    collapsed_ = true;
    return true;
}

bool ForgettingWindow::reset() {
    if (!collapsed_ || !snapshot_) return false;
    const auto& buf = snapshot_->buffer;
    size_ = static_cast<int>(buf.size());
    head_ = 0;
    std::fill(ring_.begin(), ring_.end(), 0);
    std::copy(buf.begin(), buf.end(), ring_.begin());
    collapsed_ = false;
    snapshot_.reset();
    return true;
}

double ForgettingWindow::effective_mean() const {
    if (collapsed_) return 0.0;
    return mean().value_or(0.0);
}

std::vector<Cents> ForgettingWindow::contents() const {
    std::vector<Cents> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (int i = 0; i < size_; ++i) out.push_back(at(i));
    return out;
}

ForgettingWindow ForgettingWindow::from_parts(WindowParams params, std::vector<Cents> buffer,
                                              bool collapsed, std::optional<Snapshot> snapshot) {
    ForgettingWindow w(params);
    if (buffer.size() > static_cast<std::size_t>(params.capacity))
        throw std::invalid_argument("window buffer exceeds capacity");
    for (Cents amount : buffer) w.observe(amount);
    w.collapsed_ = collapsed;
    w.snapshot_ = std::move(snapshot);
    if (w.collapsed_ && !w.snapshot_)
        throw std::invalid_argument("collapsed window requires a snapshot");
    if (!w.collapsed_ && w.snapshot_)
        throw std::invalid_argument("snapshot present on a non-collapsed window");
    return w;
}

}  // namespace cardguard
