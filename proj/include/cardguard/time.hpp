#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cardguard {

// Unix epoch seconds, single configured timezone (UTC), no DST. Transaction
// data carries minute resolution; Timestamps from the CSV are whole minutes.
using Timestamp = std::int64_t;

struct CivilTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;   // 0..23
    int minute = 0; // 0..59
};

Timestamp make_timestamp(int year, int month, int day, int hour, int minute);
CivilTime civil_from(Timestamp t);

inline int hour_of(Timestamp t) {
    std::int64_t sec = ((t % 86400) + 86400) % 86400;
    return static_cast<int>(sec / 3600);
}

// "YYYY-MM-DD HH:MM"
std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view text);

}  // namespace cardguard
