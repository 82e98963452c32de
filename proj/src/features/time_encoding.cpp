#include "irops/features/time_encoding.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "irops/core/error.hpp"

namespace irops::features {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDayMinutes = 1440;

void check_minute(int minute) {
  if (minute < 0 || minute >= kDayMinutes) {
    throw DomainError("minute of day out of range [0, 1440): " + std::to_string(minute));
  }
}

}  // namespace

CyclicPair cyclic_from_phase(double phase) { return {std::sin(phase), std::cos(phase)}; }

CyclicPair encode_time_of_day(int minute) {
  check_minute(minute);
  return cyclic_from_phase(kTwoPi * minute / kDayMinutes);
}

void validate(const ShiftSchedule& s) {
  if (s.length <= 0) {
    throw ConfigError("shift length must be positive");
  }
  if (s.starts.empty()) {
    throw ConfigError("shift schedule has no shifts");
  }
  for (std::size_t i = 0; i < s.starts.size(); ++i) {
    if (s.starts[i] < 0 || s.starts[i] >= kDayMinutes) {
      throw ConfigError("shift start outside [0, 1440)");
    }
    if (i > 0 && s.starts[i] <= s.starts[i - 1]) {
      throw ConfigError("shift starts must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < s.starts.size(); ++i) {
    const int next = i + 1 < s.starts.size() ? s.starts[i + 1] : s.starts.front() + kDayMinutes;
    if (next - s.starts[i] > s.length) {
      throw ConfigError("shift schedule leaves a gap after start " + std::to_string(s.starts[i]));
    }
  }
}

ShiftProgress encode_shift_fraction(int minute, const ShiftSchedule& schedule) {
  check_minute(minute);
  validate(schedule);
  // Latest start at or before the minute; before the first start we are in
  // the previous day's last shift.
  int start = schedule.starts.back() - kDayMinutes;
  for (const int s : schedule.starts) {
    if (s <= minute) {
      start = s;
    }
  }
  const double fraction = static_cast<double>(minute - start) / schedule.length;
  return {fraction, std::cos(kTwoPi * fraction)};
}

int day_of_year(const Date& date) {
  using namespace std::chrono;
  const auto jan1 = sys_days(year_month_day(date.year(), January, day(1)));
  return static_cast<int>((sys_days(date) - jan1).count()) + 1;
}

DateEncoding encode_date(const Date& date) {
  using namespace std::chrono;
  if (!date.ok()) {
    throw DomainError("invalid date");
  }
  const int doy = day_of_year(date);
  const int days_in_year = date.year().is_leap() ? 366 : 365;
  const auto last = year_month_day_last(date.year(), month_day_last(date.month()));
  const auto days_in_month = static_cast<unsigned>(last.day());
  const unsigned weekday_index = weekday(sys_days(date)).iso_encoding() - 1;  // Monday = 0

  DateEncoding e;
  const double season_cycles = doy / 91.3125;
  e.season = cyclic_from_phase(kTwoPi * (season_cycles - std::floor(season_cycles)));
  e.month = cyclic_from_phase(kTwoPi * (static_cast<unsigned>(date.day()) - 1) / days_in_month);
  e.dow = cyclic_from_phase(kTwoPi * weekday_index / 7.0);
  e.doy = cyclic_from_phase(kTwoPi * (doy - 1) / days_in_year);
  return e;
}

}  // namespace irops::features
