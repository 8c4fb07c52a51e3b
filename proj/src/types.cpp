#include "cardguard/types.hpp"

#include <array>

namespace cardguard {

namespace {

struct FlagNames {
    ErrorFlag flag;
    std::string_view id;
    std::string_view csv;
};

constexpr std::array<FlagNames, kErrorFlagCount> kFlagNames{{
    {ErrorFlag::BadCVV, "BadCVV", "Bad CVV"},
    {ErrorFlag::BadPIN, "BadPIN", "Bad PIN"},
    {ErrorFlag::BadZip, "BadZip", "Bad Zipcode"},
    {ErrorFlag::InsufficientBalance, "InsufficientBalance", "Insufficient Balance"},
    {ErrorFlag::TechnicalGlitch, "TechnicalGlitch", "Technical Glitch"},
    {ErrorFlag::BadExpiration, "BadExpiration", "Bad Expiration"},
    {ErrorFlag::BadCardNumber, "BadCardNumber", "Bad Card Number"},
    {ErrorFlag::UnknownError, "UnknownError", "Unknown Error"},
}};

}  // namespace

std::string_view to_string(ErrorFlag f) {
    return kFlagNames[static_cast<unsigned>(f)].id;
}

std::optional<ErrorFlag> error_flag_from_string(std::string_view name) {
    for (const auto& n : kFlagNames)
        if (n.id == name) return n.flag;
    return std::nullopt;
}

std::string_view csv_name(ErrorFlag f) {
    return kFlagNames[static_cast<unsigned>(f)].csv;
}

std::optional<ErrorFlag> error_flag_from_csv(std::string_view name) {
    for (const auto& n : kFlagNames)
        if (n.csv == name) return n.flag;
    return std::nullopt;
}

std::string_view to_string(Channel c) {
    switch (c) {
        case Channel::Chip: return "Chip";
        case Channel::Swipe: return "Swipe";
        case Channel::Online: return "Online";
    }
    return "Chip";
}

std::string_view csv_name(Channel c) {
    switch (c) {
        case Channel::Chip: return "Chip Transaction";
        case Channel::Swipe: return "Swipe Transaction";
        case Channel::Online: return "Online Transaction";
    }
    return "Chip Transaction";
}

std::optional<Channel> channel_from_csv(std::string_view name) {
    if (name == "Chip Transaction") return Channel::Chip;
    if (name == "Swipe Transaction") return Channel::Swipe;
    if (name == "Online Transaction") return Channel::Online;
    return std::nullopt;
}

}  // namespace cardguard
