#include "qbsd/records.hpp"

#include "qbsd/timestamps.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace qbsd {

std::string format_number(double v) {
	if (std::isnan(v)) {
		return {};
	}
	char buf[64];
	const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, end);
}

bool is_anomaly(const StepRecord &rec, double threshold) noexcept {
	return rec.residuals && std::abs(rec.residuals->normalized) > threshold;
}

RecordCsvWriter::RecordCsvWriter(std::ostream &out, RecordCsvOptions options) : out_(out), options_(options) {
}

void RecordCsvWriter::write_header() {
	out_ << "timestamp,actual,forecast,q1,q3,iqr,diff_residual,norm_residual,sample_count,fallback_used";
	if (options_.smoothed_bounds) {
		out_ << ",q1_smooth,q3_smooth";
	}
	if (options_.anomaly_threshold) {
		out_ << ",anomaly_flag";
	}
	out_ << '\n';
}

void RecordCsvWriter::write(const StepRecord &rec, double q1_smooth, double q3_smooth) {
	out_ << format_timestamp(rec.timestamp) << ',' << format_number(rec.actual) << ',';
	if (rec.forecast) {
		const auto &f = *rec.forecast;
		out_ << format_number(f.forecast) << ',' << format_number(f.q1) << ',' << format_number(f.q3) << ','
		     << format_number(f.iqr) << ',';
	} else {
		out_ << ",,,,";
	}
	if (rec.residuals) {
		out_ << format_number(rec.residuals->difference) << ',' << format_number(rec.residuals->normalized) << ',';
	} else {
		out_ << ",,";
	}
	if (rec.forecast) {
		out_ << rec.forecast->sample_count << ',' << (rec.forecast->fallback_used ? "true" : "false");
	} else {
		out_ << ',';
	}
	if (options_.smoothed_bounds) {
		out_ << ',' << format_number(q1_smooth) << ',' << format_number(q3_smooth);
	}
	if (options_.anomaly_threshold) {
		out_ << ',';
		if (rec.residuals) {
			const bool flag = is_anomaly(rec, *options_.anomaly_threshold);
			anomalies_ += flag ? 1 : 0;
			out_ << (flag ? '1' : '0');
		}
	}
	out_ << '\n';
	++rows_;
}

} // namespace qbsd
