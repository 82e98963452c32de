#pragma once

#include <vector>

#include "irops/flight_data/flight_record.hpp"

namespace irops::features {

/// A point on the unit circle for a periodic quantity.
struct CyclicPair {
  double sin = 0.0;
  double cos = 1.0;
};

CyclicPair cyclic_from_phase(double phase_radians);

/// 24-hour clock position of a time of day. minute must lie in [0, 1440).
CyclicPair encode_time_of_day(int minute);

/// Work-shift boundaries. Each shift runs from its start until the next start;
/// every gap between consecutive starts (cyclically) must be at most `length`.
struct ShiftSchedule {
  std::vector<int> starts{360, 840, 1320};  // 06:00, 14:00, 22:00
  int length = 480;
};

/// Throws ConfigError for an empty, unsorted, out-of-range, or gapped schedule.
void validate(const ShiftSchedule& schedule);

struct ShiftProgress {
  double fraction = 0.0;       ///< elapsed share of the current shift, in [0, 1)
  double cos_component = 1.0;  ///< cos(2 pi fraction)
};

ShiftProgress encode_shift_fraction(int minute, const ShiftSchedule& schedule = {});

/// Four periodic views of a calendar date.
///  season: phase 2 pi (day_of_year / 91.3125 mod 1)
///  month:  phase 2 pi (day_of_month - 1) / days_in_month
///  dow:    phase 2 pi weekday / 7 with Monday = 0
///  doy:    phase 2 pi (day_of_year - 1) / days_in_year
struct DateEncoding {
  CyclicPair season;
  CyclicPair month;
  CyclicPair dow;
  CyclicPair doy;
};

DateEncoding encode_date(const Date& date);

/// 1-based ordinal day within the year.
int day_of_year(const Date& date);

}  // namespace irops::features
