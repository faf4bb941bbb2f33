#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "polar/error.hpp"

namespace polar {

// Locale-free number formatting/parsing for all file formats.
// format_double emits the shortest representation that round-trips.
inline std::string format_double(double v)
{
	char buf[32];
	auto res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s)
{
	double v = 0.0;
	auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc() || res.ptr != s.data() + s.size())
		fail(errc::io_error, "bad decimal value: '" + std::string(s) + "'");
	return v;
}

inline std::int64_t parse_int(std::string_view s)
{
	std::int64_t v = 0;
	auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc() || res.ptr != s.data() + s.size())
		fail(errc::io_error, "bad integer value: '" + std::string(s) + "'");
	return v;
}

inline std::string_view trim(std::string_view s)
{
	while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
		s.remove_prefix(1);
	while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
		s.remove_suffix(1);
	return s;
}

} // namespace polar
