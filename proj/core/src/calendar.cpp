#include "wsynth/calendar.hpp"

#include <cstdio>

namespace wsynth {

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

namespace {
int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[month - 1];
}
}  // namespace

// Howard Hinnant's chrono-compatible civil date algorithms.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilTime civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  CivilTime t;
  t.year = static_cast<int>(y + (m <= 2));
  t.month = static_cast<int>(m);
  t.day = static_cast<int>(d);
  t.hour = 0;
  return t;
}

std::int64_t epoch_hours(const CivilTime& t) {
  return days_from_civil(t.year, t.month, t.day) * 24 + t.hour;
}

CivilTime civil_from_epoch_hours(std::int64_t hours) {
  std::int64_t days = hours / 24;
  int h = static_cast<int>(hours - days * 24);
  if (h < 0) {
    h += 24;
    days -= 1;
  }
  CivilTime t = civil_from_days(days);
  t.hour = h;
  return t;
}

int hour_of_year(const CivilTime& t) {
  const std::int64_t day0 = days_from_civil(t.year, 1, 1);
  const std::int64_t day = days_from_civil(t.year, t.month, t.day);
  return static_cast<int>((day - day0) * 24 + t.hour);
}

bool parse_iso_hour(const std::string& text, std::int64_t& hours_out) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char z = 0, tail = 0;
  const int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c%c",
                            &y, &mo, &d, &h, &mi, &s, &z, &tail);
  if (n != 7 || z != 'Z') return false;
  if (mi != 0 || s != 0) return false;
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo)) return false;
  if (h < 0 || h > 23) return false;
  CivilTime t{y, mo, d, h};
  hours_out = epoch_hours(t);
  return true;
}

std::string format_iso_hour(std::int64_t hours) {
  const CivilTime t = civil_from_epoch_hours(hours);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", t.year, t.month,
                t.day, t.hour);
  return buf;
}

double fractional_day_of_year(const CivilTime& t) {
  const std::int64_t day0 = days_from_civil(t.year, 1, 1);
  const std::int64_t day = days_from_civil(t.year, t.month, t.day);
  return static_cast<double>(day - day0) + t.hour / 24.0;
}

}  // namespace wsynth
