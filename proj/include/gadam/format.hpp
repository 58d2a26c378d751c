#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gadam {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

/// Parses the whole of `text` as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view text);

/// "[a,b,c]" with format_double entries.
std::string format_vector(const std::vector<double>& values);

/// Accepts "[a, b, c]" or "a,b,c".
std::vector<double> parse_vector(std::string_view text);

}  // namespace gadam
