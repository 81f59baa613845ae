#pragma once

#include <iosfwd>
#include <string>

#include "tempdis/series.hpp"

namespace tempdis {

/// Reads a `period,value` CSV into a Series. Periods must be strictly
/// increasing and contiguous at the requested frequency; the first gap or
/// malformed row aborts the load with its line number.
Series load_series_csv(const std::string& path, Frequency frequency);
Series read_series_csv(std::istream& in, Frequency frequency,
                       const std::string& origin);

/// Writes `period,value` rows with fixed 6-decimal values.
void write_series_csv(const std::string& path, const Series& s);
void write_series_csv(std::ostream& out, const Series& s);

}  // namespace tempdis
