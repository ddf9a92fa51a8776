#include "intravol/dates.hpp"

#include "intravol/errors.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace intravol {

namespace {

bool parse_int_field(std::string_view text, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > text.size()) return false;
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc() && ptr == first + len;
}

} // namespace

Date Date::from_ymd(int year, int month, int day) {
    std::chrono::year_month_day ymd{std::chrono::year{year},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) {
        throw Error(ErrorCode::parse_error,
                    "invalid calendar date " + std::to_string(year) + "-" +
                        std::to_string(month) + "-" + std::to_string(day));
    }
    return Date(static_cast<std::int32_t>(
        std::chrono::sys_days(ymd).time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view text) {
    int y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!parse_int_field(text, 0, 4, y) || !parse_int_field(text, 5, 2, m) ||
        !parse_int_field(text, 8, 2, d)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{y},
                                    std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date(static_cast<std::int32_t>(
        std::chrono::sys_days(ymd).time_since_epoch().count()));
}

std::string Date::to_string() const {
    std::chrono::year_month_day ymd{
        std::chrono::sys_days{std::chrono::days{serial_}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int Date::weekday() const noexcept {
    std::chrono::weekday wd{std::chrono::sys_days{std::chrono::days{serial_}}};
    return static_cast<int>(wd.c_encoding());
}

TimeOfDay TimeOfDay::from_hms(int hour, int minute, int second, int millisecond) {
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 ||
        second > 59 || millisecond < 0 || millisecond > 999) {
        throw Error(ErrorCode::parse_error, "invalid time of day");
    }
    return TimeOfDay{((hour * 60LL + minute) * 60 + second) * 1000 + millisecond};
}

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view text) {
    int h = 0, m = 0, s = 0;
    if (text.size() != 5 && text.size() != 8) return std::nullopt;
    if (text[2] != ':') return std::nullopt;
    if (!parse_int_field(text, 0, 2, h) || !parse_int_field(text, 3, 2, m)) {
        return std::nullopt;
    }
    if (text.size() == 8) {
        if (text[5] != ':') return std::nullopt;
        if (!parse_int_field(text, 6, 2, s)) return std::nullopt;
    }
    if (h > 23 || m > 59 || s > 59) return std::nullopt;
    return TimeOfDay{((h * 60LL + m) * 60 + s) * 1000};
}

std::string TimeOfDay::to_string() const {
    std::int64_t t = ms / 1000;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", static_cast<int>(t / 3600),
                  static_cast<int>((t / 60) % 60), static_cast<int>(t % 60));
    return buf;
}

std::optional<Timestamp> Timestamp::parse_iso(std::string_view text) {
    if (text.size() < 16) return std::nullopt;
    auto date = Date::parse(text.substr(0, 10));
    if (!date) return std::nullopt;
    if (text[10] != 'T' && text[10] != ' ') return std::nullopt;

    std::string_view rest = text.substr(11);
    int h = 0, m = 0, s = 0, frac_ms = 0;
    if (rest.size() < 5 || rest[2] != ':') return std::nullopt;
    if (!parse_int_field(rest, 0, 2, h) || !parse_int_field(rest, 3, 2, m)) {
        return std::nullopt;
    }
    std::size_t pos = 5;
    if (pos < rest.size() && rest[pos] == ':') {
        if (!parse_int_field(rest, pos + 1, 2, s)) return std::nullopt;
        pos += 3;
    }
    if (pos < rest.size() && rest[pos] == '.') {
        // up to millisecond resolution; extra digits are not accepted
        std::size_t digits = rest.size() - pos - 1;
        if (digits < 1 || digits > 3) return std::nullopt;
        if (!parse_int_field(rest, pos + 1, digits, frac_ms)) return std::nullopt;
        for (std::size_t i = digits; i < 3; ++i) frac_ms *= 10;
        pos = rest.size();
    }
    if (pos != rest.size()) return std::nullopt;
    if (h > 23 || m > 59 || s > 59) return std::nullopt;
    return Timestamp::at(*date, TimeOfDay{((h * 60LL + m) * 60 + s) * 1000 + frac_ms});
}

Date Timestamp::date() const noexcept {
    std::int64_t serial = ms / kMillisPerDay;
    if (ms < 0 && ms % kMillisPerDay != 0) --serial; // floor toward -inf
    return Date(static_cast<std::int32_t>(serial));
}

std::int64_t Timestamp::time_of_day_ms() const noexcept {
    return ms - static_cast<std::int64_t>(date().serial()) * kMillisPerDay;
}

std::string Timestamp::to_string() const {
    std::int64_t tod = time_of_day_ms();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02d", date().to_string().c_str(),
                  static_cast<int>(tod / 3'600'000),
                  static_cast<int>((tod / 60'000) % 60),
                  static_cast<int>((tod / 1000) % 60));
    std::string out = buf;
    if (tod % 1000 != 0) {
        std::snprintf(buf, sizeof(buf), ".%03d", static_cast<int>(tod % 1000));
        out += buf;
    }
    return out;
}

} // namespace intravol
