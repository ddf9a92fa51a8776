#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace intravol {

/// Calendar day, stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::int32_t serial) : serial_(serial) {}

    static Date from_ymd(int year, int month, int day); // throws on invalid dates
    static std::optional<Date> parse(std::string_view text); // "YYYY-MM-DD"

    std::int32_t serial() const noexcept { return serial_; }
    std::string to_string() const; // YYYY-MM-DD
    int weekday() const noexcept;  // 0 = Sunday ... 6 = Saturday
    bool is_weekend() const noexcept { int w = weekday(); return w == 0 || w == 6; }
    Date next_day() const noexcept { return Date(serial_ + 1); }

    auto operator<=>(const Date&) const = default;

private:
    std::int32_t serial_ = 0;
};

constexpr std::int64_t kMillisPerDay = 86'400'000;

/// Time of day in milliseconds since midnight.
struct TimeOfDay {
    std::int64_t ms = 0;

    static TimeOfDay from_hms(int hour, int minute, int second = 0, int millisecond = 0);
    static std::optional<TimeOfDay> parse(std::string_view text); // "HH:MM[:SS]"
    std::string to_string() const;

    auto operator<=>(const TimeOfDay&) const = default;
};

/// Instant with millisecond resolution, naive (no time zone), epoch 1970-01-01T00:00.
struct Timestamp {
    std::int64_t ms = 0;

    static Timestamp at(Date d, TimeOfDay tod) {
        return Timestamp{static_cast<std::int64_t>(d.serial()) * kMillisPerDay + tod.ms};
    }
    // "YYYY-MM-DD[T ]HH:MM[:SS[.fff]]"
    static std::optional<Timestamp> parse_iso(std::string_view text);

    Date date() const noexcept;
    std::int64_t time_of_day_ms() const noexcept;
    std::string to_string() const;

    auto operator<=>(const Timestamp&) const = default;
};

} // namespace intravol
