#pragma once

// Small text helpers shared by the CSV readers and writers.

#include <string>
#include <string_view>
#include <vector>

namespace cyclic::text {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Parses a whole field as a double; false on trailing junk or empty input.
bool parse_double(std::string_view s, double& out);

/// Splits one CSV record on commas, honouring double-quoted fields and
/// stripping a trailing '\r'.
std::vector<std::string> split_csv_line(std::string_view line);

std::string trim(std::string_view s);

}  // namespace cyclic::text
