#include <doctest.h>

#include "wsynth/calendar.hpp"

using namespace wsynth;

TEST_CASE("civil date round trip") {
  for (std::int64_t d : {-1000000LL, -1LL, 0LL, 1LL, 10957LL, 20000LL}) {
    const CivilTime t = civil_from_days(d);
    CHECK(days_from_civil(t.year, t.month, t.day) == d);
  }
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(2000, 3, 1) == 11017);
}

TEST_CASE("leap years") {
  CHECK(is_leap_year(2000));
  CHECK(is_leap_year(1996));
  CHECK(!is_leap_year(1900));
  CHECK(!is_leap_year(2015));
  CHECK(is_leap_year(2012));
}

TEST_CASE("iso hour parsing") {
  std::int64_t h = 0;
  REQUIRE(parse_iso_hour("1970-01-01T00:00:00Z", h));
  CHECK(h == 0);
  REQUIRE(parse_iso_hour("1970-01-02T03:00:00Z", h));
  CHECK(h == 27);
  CHECK(format_iso_hour(27) == "1970-01-02T03:00:00Z");

  CHECK(!parse_iso_hour("1970-01-01T00:30:00Z", h));  // minutes must be zero
  CHECK(!parse_iso_hour("1970-01-01T00:00:00", h));   // no zone suffix
  CHECK(!parse_iso_hour("1970-02-30T00:00:00Z", h));  // bad day
  CHECK(!parse_iso_hour("not a time", h));
  REQUIRE(parse_iso_hour("2016-02-29T23:00:00Z", h));  // leap day is valid
}

TEST_CASE("hour of year") {
  CHECK(hour_of_year({2015, 1, 1, 0}) == 0);
  CHECK(hour_of_year({2015, 1, 2, 5}) == 29);
  CHECK(hour_of_year({2015, 12, 31, 23}) == 8759);
  CHECK(hour_of_year({2016, 12, 31, 23}) == 8783);  // leap year runs long
}
