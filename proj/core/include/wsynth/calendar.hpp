#pragma once

#include <cstdint>
#include <string>

namespace wsynth {

// Hours per non-leap year; the fixed length of every model year.
inline constexpr int kHoursPerYear = 8760;

struct CivilTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;   // 0..23
};

bool is_leap_year(int year);

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, int month, int day);
CivilTime civil_from_days(std::int64_t days);

// Epoch hours: hours since 1970-01-01T00:00:00Z.
std::int64_t epoch_hours(const CivilTime& t);
CivilTime civil_from_epoch_hours(std::int64_t hours);

// Hour of year, 0-based, counting Feb 29 hours in leap years.
int hour_of_year(const CivilTime& t);

// Strict "YYYY-MM-DDTHH:MM:SSZ" with zero minutes and seconds.
// Returns false on any malformed or out-of-range field.
bool parse_iso_hour(const std::string& text, std::int64_t& hours_out);
std::string format_iso_hour(std::int64_t epoch_hours);

// Fractional day of year used by the solar geometry, 0-based at Jan 1 00:00.
double fractional_day_of_year(const CivilTime& t);

}  // namespace wsynth
