#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obmstop {

/// Shortest round-trip form is not used: always 17 significant digits, '.' as
/// decimal separator, independent of the global locale. inf/nan as "inf"/"nan".
std::string format_double(double v);

/// Writes fields joined by commas and a trailing newline. Fields containing a
/// comma or quote are quoted.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace obmstop
