#pragma once

#include "qbsd/timegrid.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qbsd {

/// Aligned observations in strictly increasing slot order; gaps allowed.
struct SeriesFrame {
	Granularity granularity;
	std::vector<SeriesPoint> points;

	std::size_t size() const noexcept {
		return points.size();
	}
	bool empty() const noexcept {
		return points.empty();
	}
	std::vector<double> values() const;
};

/// Reads a headered CSV. Rows with an empty or NaN value cell are treated as
/// gaps. Output is sorted by slot. Throws ParseError (row and column named),
/// GridMisaligned, DuplicateTimestamp, IoError.
SeriesFrame load_csv(const std::filesystem::path &path, const std::string &timestamp_column,
                     const std::string &value_column, const Granularity &g);
SeriesFrame parse_csv(std::istream &in, const std::string &timestamp_column, const std::string &value_column,
                      const Granularity &g);

/// Row-at-a-time CSV reader for streaming use. Timestamps must be strictly
/// increasing; gap rows (empty value) are skipped.
class CsvSeriesReader {
public:
	CsvSeriesReader(std::istream &in, std::string timestamp_column, std::string value_column, Granularity g);

	std::optional<SeriesPoint> next();
	std::size_t row() const noexcept {
		return row_;
	}

private:
	std::istream &in_;
	std::string ts_name_;
	std::string value_name_;
	Granularity g_;
	std::size_t ts_index_ = 0;
	std::size_t value_index_ = 0;
	std::size_t row_ = 0;
	std::optional<std::int64_t> last_slot_;
};

void write_frame_csv(std::ostream &out, const SeriesFrame &frame, const std::string &timestamp_column = "timestamp",
                     const std::string &value_column = "value");

/// Splits one CSV line; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(const std::string &line);

struct DatasetDescriptor {
	std::string name;
	Granularity frequency;
	std::string timestamp_column;
	std::string target_column;
	std::int64_t train_window_slots = 0;
	std::int64_t k = 0; // context period in slots
	SeasonalityScheme scheme;
	std::optional<std::int64_t> test_start; // epoch seconds, inclusive
	std::optional<std::int64_t> test_end;   // epoch seconds, inclusive
	std::string notes;
};

std::vector<DatasetDescriptor> builtin_descriptors();
std::optional<DatasetDescriptor> find_descriptor(const std::string &name);

struct Injection {
	std::int64_t slot_index = 0; // relative to the first generated slot
	double magnitude = 0.0;
};

struct SynthSpec {
	std::int64_t days = 56;
	std::int64_t slots_per_day = 96;
	std::int64_t start_epoch = 1675641600; // 2023-02-06T00:00:00, a Monday
	std::vector<double> daily_profile;     // empty selects default_daily_profile()
	double weekday_scale = 1.0;
	double weekend_scale = 0.6;
	double noise_std = 0.0;
	std::vector<Injection> anomalies;
	std::vector<std::pair<std::int64_t, std::int64_t>> missing; // (first slot index, count)
	std::uint64_t seed = 42;
};

/// Telecom-like daily shape: quiet overnight, a broad midday peak and an
/// evening shoulder. Strictly positive.
std::vector<double> default_daily_profile(std::int64_t slots_per_day);

/// value = profile(slot_of_day) * day_scale(day_of_week) + N(0, noise_std^2)
///         + injections. Deterministic for a fixed seed.
SeriesFrame generate_synthetic(const SynthSpec &spec);

/// "slot:+mag,slot:-mag"
std::vector<Injection> parse_injections(const std::string &text);

} // namespace qbsd
