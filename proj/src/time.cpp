#include "cardguard/time.hpp"

#include <chrono>
#include <cstdio>

namespace cardguard {

namespace chr = std::chrono;

Timestamp make_timestamp(int year, int month, int day, int hour, int minute) {
    chr::year_month_day ymd{chr::year(year), chr::month(static_cast<unsigned>(month)),
                            chr::day(static_cast<unsigned>(day))};
    auto days = chr::sys_days(ymd).time_since_epoch().count();
    return static_cast<Timestamp>(days) * 86400 + static_cast<Timestamp>(hour) * 3600 +
           static_cast<Timestamp>(minute) * 60;
}

CivilTime civil_from(Timestamp t) {
    std::int64_t days = t / 86400;
    std::int64_t sec = t % 86400;
    if (sec < 0) {
        sec += 86400;
        days -= 1;
    }
    chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
    CivilTime c;
    c.year = static_cast<int>(ymd.year());
    c.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    c.day = static_cast<int>(static_cast<unsigned>(ymd.day()));
    c.hour = static_cast<int>(sec / 3600);
    c.minute = static_cast<int>((sec % 3600) / 60);
    return c;
}

std::string format_timestamp(Timestamp t) {
    CivilTime c = civil_from(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d", c.year, c.month, c.day, c.hour,
                  c.minute);
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    int y, mo, d, h, mi;
    char tail;
    std::string s(text);
    if (std::sscanf(s.c_str(), "%d-%d-%d %d:%d%c", &y, &mo, &d, &h, &mi, &tail) != 5) return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59)
        return std::nullopt;
    return make_timestamp(y, mo, d, h, mi);
}

}  // namespace cardguard
