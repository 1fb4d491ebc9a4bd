#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gainsched::str {

/// Shortest decimal string that round-trips the exact double value.
std::string format_double(double v);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// RFC-4180 style CSV: quoted fields may contain commas, quotes ("" escape)
/// and newlines. Returns rows of fields; a trailing newline adds no row.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

std::string read_file(const std::string& path);        // throws Error
void write_file(const std::string& path, std::string_view content);

}  // namespace gainsched::str
