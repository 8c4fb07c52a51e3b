#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cardguard/money.hpp"
#include "cardguard/time.hpp"

namespace cardguard {

enum class Channel : std::uint8_t { Chip, Swipe, Online };

enum class ErrorFlag : std::uint8_t {
    BadCVV = 0,
    BadPIN,
    BadZip,
    InsufficientBalance,
    TechnicalGlitch,
    BadExpiration,
    BadCardNumber,
    UnknownError,  // unrecognized error text from the data, kept as a generic flag
};
inline constexpr int kErrorFlagCount = 8;

// Duplicate-free set of authorization error flags.
class ErrorSet {
public:
    void add(ErrorFlag f) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(f)); }
    bool contains(ErrorFlag f) const {
        return (bits_ & (1u << static_cast<unsigned>(f))) != 0;
    }
    bool empty() const { return bits_ == 0; }
    int count() const {
        int n = 0;
        for (int i = 0; i < kErrorFlagCount; ++i)
            if (bits_ & (1u << i)) ++n;
        return n;
    }
    std::uint8_t bits() const { return bits_; }
    static ErrorSet from_bits(std::uint8_t b) {
        ErrorSet s;
        s.bits_ = b;
        return s;
    }
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (int i = 0; i < kErrorFlagCount; ++i)
            if (bits_ & (1u << i)) fn(static_cast<ErrorFlag>(i));
    }
    bool operator==(const ErrorSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

// Identifier names ("BadCVV"), used in config keys and logs.
std::string_view to_string(ErrorFlag f);
std::optional<ErrorFlag> error_flag_from_string(std::string_view name);

// Dataset spellings ("Bad CVV"), used in the CSV "Errors?" column.
std::string_view csv_name(ErrorFlag f);
std::optional<ErrorFlag> error_flag_from_csv(std::string_view name);

std::string_view to_string(Channel c);
std::string_view csv_name(Channel c);  // "Chip Transaction" etc.
std::optional<Channel> channel_from_csv(std::string_view name);

// One card event as read from the transaction stream.
struct Transaction {
    std::string card_id;        // "u{User}c{Card}"
    std::int64_t seq_no = 0;    // per-card, strictly increasing
    Timestamp timestamp = 0;    // minute resolution
    Cents amount = 0;           // >= 0
    int mcc = 0;                // 0..9999
    std::string merchant_name;  // pass-through, not used by detection
    std::string merchant_city;
    std::string merchant_state;  // 2-letter code or "ONLINE"
    std::string zip;             // 5-digit text, empty when absent
    Channel channel = Channel::Chip;
    ErrorSet errors;
    std::optional<bool> fraud_label;  // ground truth when available

    bool well_formed() const { return amount >= 0 && seq_no >= 0 && mcc >= 0 && mcc <= 9999; }
};

inline constexpr std::string_view kOnlineState = "ONLINE";

}  // namespace cardguard
