#include "run_config.hpp"

#include <cctype>
#include <sstream>

namespace qbsd::cli {

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
	std::vector<std::string> out;
	std::stringstream ss(text);
	for (std::string item; std::getline(ss, item, sep);) {
		out.push_back(item);
	}
	return out;
}

std::int64_t parse_int(const std::string &text, const std::string &what) {
	try {
		std::size_t used = 0;
		const auto v = std::stoll(text, &used);
		if (used == text.size()) {
			return v;
		}
	} catch (const std::logic_error &) {
	}
	throw ConfigError("cannot parse " + what + " '" + text + "'");
}

std::int64_t parse_lag(const std::string &text, const Granularity &g) {
	if (text.empty()) {
		throw ConfigError("empty lag in scheme");
	}
	const char unit = text.back();
	if (unit == 'd' || unit == 'D') {
		return g.days_to_slots(parse_int(text.substr(0, text.size() - 1), "lag"));
	}
	if (unit == 'w' || unit == 'W') {
		return g.slots_per_week() * parse_int(text.substr(0, text.size() - 1), "lag");
	}
	return parse_int(text, "lag");
}

WindowShape parse_shape(const std::string &text) {
	if (text == "past") {
		return WindowShape::Past;
	}
	if (text == "sym" || text == "symmetric") {
		return WindowShape::Symmetric;
	}
	if (text == "fwd" || text == "forward") {
		return WindowShape::ForwardInclusive;
	}
	throw ConfigError("unknown window shape '" + text + "' (expected past, sym or fwd)");
}

SeasonalityScheme with_context_period(const SeasonalityScheme &scheme, std::int64_t k) {
	auto lags = scheme.lags();
	for (auto &lag : lags) {
		lag.window.k = k;
	}
	return SeasonalityScheme(std::move(lags));
}

std::int64_t parse_time(const std::string &text, const std::string &flag) {
	if (auto v = parse_timestamp(text)) {
		return *v;
	}
	throw ConfigError(flag + ": cannot parse timestamp '" + text + "'");
}

} // namespace

SeasonalityScheme parse_scheme(const std::string &text, std::int64_t k, const Granularity &g) {
	try {
		if (text == "weekly_plus_yearly") {
			return weekly_plus_yearly_scheme(k, g);
		}
		if (text.rfind("weekly", 0) == 0 && text.size() > 6 &&
		    std::all_of(text.begin() + 6, text.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
			return default_weekly_scheme(static_cast<int>(parse_int(text.substr(6), "scheme weeks")), k, g);
		}
		if (text.find(':') != std::string::npos) {
			std::vector<LagSpec> lags;
			for (const auto &item : split(text, ',')) {
				const auto parts = split(item, ':');
				if (parts.size() != 2) {
					throw ConfigError("scheme entry '" + item + "' must look like <lag>:<past|sym|fwd>");
				}
				lags.push_back({parse_lag(parts[0], g), {parse_shape(parts[1]), k}});
			}
			return SeasonalityScheme(std::move(lags));
		}
	} catch (const Error &e) {
		throw ConfigError(std::string("--scheme: ") + e.what());
	}
	throw ConfigError("unknown scheme '" + text + "' (expected weekly4, weekly6, weekly_plus_yearly or custom lags)");
}

EvalMethod parse_method(const std::string &text, const Granularity &g, const QbsdMethod &qbsd) {
	const auto parts = split(text, ':');
	if (parts.empty() || parts.size() > 2) {
		throw ConfigError("cannot parse method '" + text + "'");
	}
	const auto &name = parts[0];
	const bool has_arg = parts.size() == 2;
	if (name == "qbsd" && !has_arg) {
		return qbsd;
	}
	if (name == "seasonal-naive") {
		const auto season = has_arg ? parse_lag(parts[1], g) : default_season_slots(g);
		if (season < 1) {
			throw ConfigError("seasonal-naive season must be positive");
		}
		return BaselineSpec {SeasonalNaive {season}};
	}
	if (name == "persistence" && !has_arg) {
		return BaselineSpec {Persistence {}};
	}
	if (name == "moving-average") {
		const auto window = has_arg ? parse_lag(parts[1], g) : 4;
		if (window < 1) {
			throw ConfigError("moving-average window must be positive");
		}
		return BaselineSpec {MovingAverage {window}};
	}
	throw ConfigError("unknown method '" + text + "' (expected qbsd, seasonal-naive, persistence, moving-average)");
}

DatasetDescriptor resolve_descriptor(const RunConfig &cfg) {
	try {
		if (!cfg.dataset.empty()) {
			auto found = find_descriptor(cfg.dataset);
			if (!found) {
				std::string names;
				for (const auto &d : builtin_descriptors()) {
					names += (names.empty() ? "" : ", ") + d.name;
				}
				throw ConfigError("unknown dataset '" + cfg.dataset + "' (builtin: " + names + ")");
			}
			auto desc = std::move(*found);
			if (cfg.interval && *cfg.interval != desc.frequency.interval_seconds) {
				throw ConfigError("--interval conflicts with the " + desc.name + " frequency");
			}
			if (cfg.scheme) {
				desc.k = cfg.k.value_or(desc.k);
				desc.scheme = parse_scheme(*cfg.scheme, desc.k, desc.frequency);
			} else if (cfg.k) {
				desc.k = *cfg.k;
				desc.scheme = with_context_period(desc.scheme, desc.k);
			}
			if (cfg.train_window_days) {
				desc.train_window_slots = desc.frequency.days_to_slots(*cfg.train_window_days);
			}
			if (cfg.test_start) {
				desc.test_start = parse_time(*cfg.test_start, "--test-start");
			}
			if (cfg.test_end) {
				desc.test_end = parse_time(*cfg.test_end, "--test-end");
			}
			desc.timestamp_column = cfg.ts_col.value_or(desc.timestamp_column);
			desc.target_column = cfg.value_col.value_or(desc.target_column);
			if (desc.train_window_slots < static_cast<std::int64_t>(required_capacity(desc.scheme))) {
				throw ConfigError("training window is shorter than the scheme span");
			}
			return desc;
		}

		const auto g = Granularity::from_interval(cfg.interval.value_or(900));
		const auto k = cfg.k.value_or(4);
		if (k < 0) {
			throw ConfigError("--k must be non-negative");
		}
		auto scheme = parse_scheme(cfg.scheme.value_or("weekly4"), k, g);
		const auto window = cfg.train_window_days ? g.days_to_slots(*cfg.train_window_days)
		                                          : static_cast<std::int64_t>(default_capacity(scheme, g));
		if (window < static_cast<std::int64_t>(required_capacity(scheme))) {
			throw ConfigError("--train-window is shorter than the scheme span");
		}
		DatasetDescriptor desc {"custom",
		                        g,
		                        cfg.ts_col.value_or("timestamp"),
		                        cfg.value_col.value_or("value"),
		                        window,
		                        k,
		                        std::move(scheme),
		                        std::nullopt,
		                        std::nullopt,
		                        ""};
		if (cfg.test_start) {
			desc.test_start = parse_time(*cfg.test_start, "--test-start");
		}
		if (cfg.test_end) {
			desc.test_end = parse_time(*cfg.test_end, "--test-end");
		}
		return desc;
	} catch (const ConfigError &) {
		throw;
	} catch (const Error &e) {
		throw ConfigError(e.what());
	}
}

SmootherSpec resolve_smoother(const RunConfig &cfg) {
	try {
		return parse_smoother(cfg.smoother);
	} catch (const Error &e) {
		throw ConfigError(std::string("--smoother: ") + e.what());
	}
}

} // namespace qbsd::cli
