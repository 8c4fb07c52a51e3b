#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cardguard {

// Monetary values are integer cents end-to-end; doubles appear only in the
// window statistics and are rendered back to 2-decimal strings at the edges.
using Cents = std::int64_t;

inline double to_dollars(Cents cents) { return static_cast<double>(cents) / 100.0; }

// Accepts "$57.40", "57.40", "57", "$3.5". Rejects negatives, missing digits,
// more than two decimal places. Returns cents.
std::optional<Cents> parse_money(std::string_view text);

// 5740 -> "57.40" (no currency symbol).
std::string format_money(Cents cents);

// Fixed 2-decimal rendering for computed statistics (interval endpoints, mean).
std::string format_money(double dollars);

}  // namespace cardguard
