#include "qbsd/timestamps.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace qbsd {

namespace {

bool read_fixed(std::string_view s, std::size_t pos, std::size_t len, int &out) {
	if (pos + len > s.size()) {
		return false;
	}
	out = 0;
	for (std::size_t i = pos; i < pos + len; ++i) {
		if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
			return false;
		}
		out = out * 10 + (s[i] - '0');
	}
	return true;
}

std::string_view trim(std::string_view s) {
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
		s.remove_prefix(1);
	}
	while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
		s.remove_suffix(1);
	}
	return s;
}

} // namespace

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
	const auto s = trim(text);
	if (s.empty()) {
		return std::nullopt;
	}

	// Plain epoch seconds.
	if (s.find('-', 1) == std::string_view::npos && s.find(':') == std::string_view::npos) {
		std::int64_t v = 0;
		const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (ec == std::errc() && ptr == s.data() + s.size()) {
			return v;
		}
		return std::nullopt;
	}

	int y = 0, mo = 0, d = 0;
	if (!read_fixed(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !read_fixed(s, 5, 2, mo) || s[7] != '-' ||
	    !read_fixed(s, 8, 2, d)) {
		return std::nullopt;
	}
	const std::chrono::year_month_day ymd {std::chrono::year {y}, std::chrono::month {static_cast<unsigned>(mo)},
	                                       std::chrono::day {static_cast<unsigned>(d)}};
	if (!ymd.ok()) {
		return std::nullopt;
	}
	std::int64_t seconds = std::chrono::sys_days {ymd}.time_since_epoch().count() * std::int64_t {86400};

	std::size_t pos = 10;
	if (pos == s.size()) {
		return seconds;
	}
	if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') {
		return std::nullopt;
	}
	++pos;
	int hh = 0, mm = 0, ss = 0;
	if (!read_fixed(s, pos, 2, hh) || pos + 2 >= s.size() || s[pos + 2] != ':' || !read_fixed(s, pos + 3, 2, mm)) {
		return std::nullopt;
	}
	pos += 5;
	if (pos < s.size() && s[pos] == ':') {
		if (!read_fixed(s, pos + 1, 2, ss)) {
			return std::nullopt;
		}
		pos += 3;
		if (pos < s.size() && s[pos] == '.') {
			++pos;
			const auto start = pos;
			while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
				if (s[pos] != '0') {
					return std::nullopt;
				}
				++pos;
			}
			if (pos == start) {
				return std::nullopt;
			}
		}
	}
	if (hh > 23 || mm > 59 || ss > 59) {
		return std::nullopt;
	}
	seconds += hh * 3600 + mm * 60 + ss;

	if (pos == s.size()) {
		return seconds;
	}
	if ((s[pos] == 'Z' || s[pos] == 'z') && pos + 1 == s.size()) {
		return seconds;
	}
	if (s[pos] == '+' || s[pos] == '-') {
		int oh = 0, om = 0;
		if (!read_fixed(s, pos + 1, 2, oh) || pos + 6 != s.size() || s[pos + 3] != ':' ||
		    !read_fixed(s, pos + 4, 2, om)) {
			return std::nullopt;
		}
		const std::int64_t offset = oh * 3600 + om * 60;
		return s[pos] == '+' ? seconds - offset : seconds + offset;
	}
	return std::nullopt;
}

std::string format_timestamp(std::int64_t epoch_seconds) {
	const auto days = epoch_seconds >= 0 ? epoch_seconds / 86400 : (epoch_seconds - 86399) / 86400;
	const auto rem = epoch_seconds - days * 86400;
	const std::chrono::year_month_day ymd {std::chrono::sys_days {std::chrono::days {days}}};
	char buf[32];
	std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
	              static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
	              static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
	return buf;
}

} // namespace qbsd
