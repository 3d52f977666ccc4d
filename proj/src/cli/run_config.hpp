#pragma once

#include "qbsd/qbsd.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qbsd::cli {

enum ExitCode : int {
	kExitOk = 0,
	kExitConfig = 1,
	kExitData = 2,
};

/// Raised for anything the user must fix in flags or the config file.
class ConfigError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Every flag of every subcommand; unset optionals fall back to the dataset
/// descriptor or a command default.
struct RunConfig {
	std::string command;

	std::vector<std::string> inputs;
	std::string output;
	std::string records;
	std::string report;
	std::string dataset;
	std::vector<std::string> methods {"qbsd"};

	std::optional<std::int64_t> k;
	std::optional<std::string> scheme;
	std::optional<std::int64_t> interval;
	std::optional<std::int64_t> train_window_days;
	std::optional<std::string> test_start;
	std::optional<std::string> test_end;
	std::optional<std::string> ts_col;
	std::optional<std::string> value_col;
	std::optional<double> c;
	std::optional<double> c_floor;
	std::size_t min_samples = kDefaultMinSamples;

	std::string smoother = "none";
	double threshold = 3.0;
	std::uint64_t seed = 42;
	unsigned parallel = 1;
	std::string format = "table";

	// bench
	std::size_t forecasts = 10000;

	// synth
	std::int64_t days = 56;
	std::int64_t slots_per_day = 96;
	double noise = 0.0;
	double weekend_scale = 0.6;
	std::string anomalies;
	std::optional<std::string> start;
};

/// "weekly4", "weekly6", "weeklyN", "weekly_plus_yearly", or a custom list such
/// as "0:past,7d:sym,14d:sym,21d:fwd" (lags in slots, or with a d/w suffix).
SeasonalityScheme parse_scheme(const std::string &text, std::int64_t k, const Granularity &g);

/// "qbsd", "seasonal-naive[:slots]", "persistence", "moving-average[:slots]".
EvalMethod parse_method(const std::string &text, const Granularity &g, const QbsdMethod &qbsd);

/// Builtin descriptor (when --dataset names one) with flag overrides applied,
/// or a custom descriptor built from the flags alone. Throws ConfigError.
DatasetDescriptor resolve_descriptor(const RunConfig &cfg);

SmootherSpec resolve_smoother(const RunConfig &cfg);

} // namespace qbsd::cli
