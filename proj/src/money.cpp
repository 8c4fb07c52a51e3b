#include "cardguard/money.hpp"

#include <cctype>
#include <cstdio>

namespace cardguard {

std::optional<Cents> parse_money(std::string_view text) {
    if (!text.empty() && text.front() == '$') text.remove_prefix(1);
    if (text.empty()) return std::nullopt;

    Cents dollars = 0;
    std::size_t i = 0;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        dollars = dollars * 10 + (text[i] - '0');
        if (dollars > 92233720368547757LL) return std::nullopt;  // cents would overflow
    }
    Cents cents = dollars * 100;
    if (i == text.size()) return cents;
    if (text[i] != '.') return std::nullopt;
    ++i;
    std::size_t frac_digits = text.size() - i;
    if (frac_digits == 0 || frac_digits > 2) return std::nullopt;
    int frac = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
        frac = frac * 10 + (text[i] - '0');
    }
    if (frac_digits == 1) frac *= 10;
    return cents + frac;
}

std::string format_money(Cents cents) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld",
                  static_cast<long long>(cents / 100),
                  static_cast<long long>(cents % 100));
    return buf;
}

std::string format_money(double dollars) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", dollars);
    return buf;
}

}  // namespace cardguard
