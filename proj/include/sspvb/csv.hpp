#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sspvb::csv {

/// Shortest text that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
[[nodiscard]] std::string format_double(double value);

/// Parses a full cell as a double (accepts inf/nan spellings). Returns false on
/// any trailing garbage or empty input.
[[nodiscard]] bool parse_double(std::string_view text, double& out);

[[nodiscard]] std::vector<std::string> split_line(std::string_view line);

[[nodiscard]] std::string_view trim(std::string_view text);

}  // namespace sspvb::csv
