#include "qbsd/datasets.hpp"

#include "qbsd/error.hpp"
#include "qbsd/timestamps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace qbsd {

std::vector<double> SeriesFrame::values() const {
	std::vector<double> out;
	out.reserve(points.size());
	for (const auto &p : points) {
		out.push_back(p.value);
	}
	return out;
}

std::vector<std::string> split_csv_line(const std::string &line) {
	std::vector<std::string> fields;
	std::string field;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char ch = line[i];
		if (quoted) {
			if (ch == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					field += '"';
					++i;
				} else {
					quoted = false;
				}
			} else {
				field += ch;
			}
		} else if (ch == '"') {
			quoted = true;
		} else if (ch == ',') {
			fields.push_back(std::move(field));
			field.clear();
		} else if (ch != '\r') {
			field += ch;
		}
	}
	fields.push_back(std::move(field));
	return fields;
}

namespace {

std::string trim_copy(const std::string &s) {
	const auto b = s.find_first_not_of(" \t");
	if (b == std::string::npos) {
		return {};
	}
	const auto e = s.find_last_not_of(" \t");
	return s.substr(b, e - b + 1);
}

std::size_t column_index(const std::vector<std::string> &header, const std::string &name) {
	for (std::size_t i = 0; i < header.size(); ++i) {
		if (trim_copy(header[i]) == name) {
			return i;
		}
	}
	throw ParseError(1, name, "column not found in header");
}

bool is_missing(const std::string &cell) {
	return cell.empty() || cell == "NaN" || cell == "nan" || cell == "NA" || cell == "null";
}

std::optional<double> parse_value(const std::string &cell, std::size_t row, const std::string &column) {
	const auto t = trim_copy(cell);
	if (is_missing(t)) {
		return std::nullopt;
	}
	double v = 0.0;
	const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
	if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
		throw ParseError(row, column, "'" + t + "' is not a number");
	}
	return v;
}

} // namespace

CsvSeriesReader::CsvSeriesReader(std::istream &in, std::string timestamp_column, std::string value_column,
                                 Granularity g)
    : in_(in), ts_name_(std::move(timestamp_column)), value_name_(std::move(value_column)), g_(g) {
	std::string line;
	if (!std::getline(in_, line)) {
		throw ParseError(1, "", "missing header row");
	}
	row_ = 1;
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
		line.erase(0, 3);
	}
	const auto header = split_csv_line(line);
	ts_index_ = column_index(header, ts_name_);
	value_index_ = column_index(header, value_name_);
}

std::optional<SeriesPoint> CsvSeriesReader::next() {
	std::string line;
	while (std::getline(in_, line)) {
		++row_;
		if (trim_copy(line).empty() || line == "\r") {
			continue;
		}
		const auto fields = split_csv_line(line);
		const auto need = std::max(ts_index_, value_index_);
		if (fields.size() <= need) {
			throw ParseError(row_, fields.size() <= ts_index_ ? ts_name_ : value_name_, "row has too few fields");
		}
		const auto ts = parse_timestamp(fields[ts_index_]);
		if (!ts) {
			throw ParseError(row_, ts_name_, "cannot parse timestamp '" + fields[ts_index_] + "'");
		}
		SlotCoord slot;
		try {
			slot = align(*ts, g_);
		} catch (const GridMisaligned &e) {
			throw GridMisaligned("row " + std::to_string(row_) + ": " + e.what());
		}
		if (last_slot_ && slot.global_slot <= *last_slot_) {
			if (slot.global_slot == *last_slot_) {
				throw DuplicateTimestamp("row " + std::to_string(row_) + ": timestamp " + fields[ts_index_] +
				                         " repeats the previous row");
			}
			throw ParseError(row_, ts_name_, "timestamps must be strictly increasing for streaming input");
		}
		last_slot_ = slot.global_slot;
		const auto v = parse_value(fields[value_index_], row_, value_name_);
		if (!v) {
			continue;
		}
		return SeriesPoint {slot, *v};
	}
	return std::nullopt;
}

SeriesFrame parse_csv(std::istream &in, const std::string &timestamp_column, const std::string &value_column,
                      const Granularity &g) {
	std::string line;
	if (!std::getline(in, line)) {
		throw ParseError(1, "", "missing header row");
	}
	if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
		line.erase(0, 3);
	}
	const auto header = split_csv_line(line);
	const auto ts_index = column_index(header, timestamp_column);
	const auto value_index = column_index(header, value_column);

	struct Row {
		SeriesPoint point;
		std::size_t row;
		bool present;
	};
	std::vector<Row> rows;
	std::size_t row = 1;
	while (std::getline(in, line)) {
		++row;
		if (trim_copy(line).empty()) {
			continue;
		}
		const auto fields = split_csv_line(line);
		if (fields.size() <= std::max(ts_index, value_index)) {
			throw ParseError(row, fields.size() <= ts_index ? timestamp_column : value_column,
			                 "row has too few fields");
		}
		const auto ts = parse_timestamp(fields[ts_index]);
		if (!ts) {
			throw ParseError(row, timestamp_column, "cannot parse timestamp '" + fields[ts_index] + "'");
		}
		SlotCoord slot;
		try {
			slot = align(*ts, g);
		} catch (const GridMisaligned &e) {
			throw GridMisaligned("row " + std::to_string(row) + ": " + e.what());
		}
		const auto v = parse_value(fields[value_index], row, value_column);
		rows.push_back({{slot, v.value_or(0.0)}, row, v.has_value()});
	}

	std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) { return a.point.slot < b.point.slot; });
	SeriesFrame frame {g, {}};
	frame.points.reserve(rows.size());
	for (std::size_t i = 0; i < rows.size(); ++i) {
		if (i > 0 && rows[i].point.slot == rows[i - 1].point.slot) {
			throw DuplicateTimestamp("rows " + std::to_string(rows[i - 1].row) + " and " + std::to_string(rows[i].row) +
			                         " share timestamp " + format_timestamp(to_timestamp(rows[i].point.slot, g)));
		}
		if (rows[i].present) {
			frame.points.push_back(rows[i].point);
		}
	}
	return frame;
}

SeriesFrame load_csv(const std::filesystem::path &path, const std::string &timestamp_column,
                     const std::string &value_column, const Granularity &g) {
	std::ifstream in(path);
	if (!in) {
		throw IoError("cannot open '" + path.string() + "'");
	}
	return parse_csv(in, timestamp_column, value_column, g);
}

void write_frame_csv(std::ostream &out, const SeriesFrame &frame, const std::string &timestamp_column,
                     const std::string &value_column) {
	out << timestamp_column << ',' << value_column << '\n';
	char buf[64];
	for (const auto &p : frame.points) {
		const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.value);
		out << format_timestamp(to_timestamp(p.slot, frame.granularity)) << ',' << std::string_view(buf, end - buf)
		    << '\n';
	}
}

namespace {

std::int64_t ts(const char *text) {
	return *parse_timestamp(text);
}

} // namespace

std::vector<DatasetDescriptor> builtin_descriptors() {
	const auto daily = Granularity::daily();
	const auto hourly = Granularity::hourly();
	const auto quarter = Granularity::quarter_hourly();
	const std::int64_t synth_start = SynthSpec {}.start_epoch;

	std::vector<DatasetDescriptor> out;
	out.push_back({"births2015", daily, "date", "births", 42, 1, default_weekly_scheme(6, 1, daily),
	               ts("2015-02-01"), ts("2015-02-28"),
	               "daily births, 2015; current week plus the previous 5 weeks; 6-week training window"});
	out.push_back({"electricity-demand", daily, "date", "demand", 365, 2, weekly_plus_yearly_scheme(2, daily),
	               ts("2016-01-01"), ts("2016-01-31"),
	               "Victoria daily electricity demand; weekly lags plus a 364-day lag; 365-day training window"});
	out.push_back({"bitcoin", daily, "date", "transactions", 28, 2, default_weekly_scheme(4, 2, daily),
	               ts("2016-01-01"), ts("2016-12-31"), "daily Bitcoin transactions; 4-week scheme; 28-day window"});
	out.push_back({"electricity", hourly, "timestamp", "MT_320", 365 * 24, 2, weekly_plus_yearly_scheme(2, hourly),
	               ts("2013-01-01T00:00:00"), ts("2013-01-31T23:00:00"),
	               "UCI electricity load diagrams, client MT_320, hourly; 365-day window"});
	out.push_back({"weather", hourly, "date", "WetBulbFarenheit", 365 * 24, 2, weekly_plus_yearly_scheme(2, hourly),
	               ts("2011-03-01T00:00:00"), ts("2011-03-07T23:00:00"),
	               "hourly local climatological data; 365-day window"});
	out.push_back({"eon1-cell-f", quarter, "timestamp", "E", 28 * 96, 4, default_weekly_scheme(4, 4, quarter),
	               ts("2023-04-01T00:00:00"), ts("2023-04-30T23:45:00"),
	               "15-minute cell KPIs A..F (select with --value-col); 4-week scheme, k = 1 hour; 28-day window"});
	out.push_back({"synthetic", quarter, "timestamp", "value", 28 * 96, 0, default_weekly_scheme(4, 0, quarter),
	               synth_start + 28 * kSecondsPerDay, synth_start + 56 * kSecondsPerDay - 900,
	               "noise-free generated KPI (qbsd synth defaults); weeks 5-8 are the test range"});
	return out;
}

std::optional<DatasetDescriptor> find_descriptor(const std::string &name) {
	for (auto &d : builtin_descriptors()) {
		if (d.name == name) {
			return d;
		}
	}
	return std::nullopt;
}

} // namespace qbsd
