#pragma once

#include <cstdint>

namespace wardsim {

// The simulation clock counts integer minutes from the epoch (day 0, 00:00).
// Keeping time integral makes event ordering exact and runs reproducible.
using TimeMin = std::int64_t;
using DurMin = std::int64_t;

inline constexpr DurMin kMinutesPerHour = 60;
inline constexpr DurMin kMinutesPerDay = 1440;

inline constexpr TimeMin day_start(int day) { return TimeMin{day} * kMinutesPerDay; }
inline constexpr int day_of(TimeMin t) { return static_cast<int>(t / kMinutesPerDay); }
inline constexpr DurMin minute_of_day(TimeMin t) { return t % kMinutesPerDay; }
inline constexpr int hour_of_day(TimeMin t) { return static_cast<int>(minute_of_day(t) / kMinutesPerHour); }

// Fraction of the day in [0, 1), the "A" and "D" of the two-time-scale occupancy law.
inline constexpr double day_fraction(TimeMin t) {
  return static_cast<double>(minute_of_day(t)) / static_cast<double>(kMinutesPerDay);
}

inline constexpr double minutes_to_hours(DurMin m) { return static_cast<double>(m) / 60.0; }
inline constexpr DurMin hours_to_minutes(double h) {
  return static_cast<DurMin>(h * 60.0 + (h >= 0 ? 0.5 : -0.5));
}

// Day of week with day 0 = Monday.
enum class Weekday { monday = 0, tuesday, wednesday, thursday, friday, saturday, sunday };

inline constexpr Weekday weekday_of(int day) { return static_cast<Weekday>(((day % 7) + 7) % 7); }

}  // namespace wardsim
