#pragma once

#include "qbsd/evaluation.hpp"

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>

namespace qbsd {

struct RecordCsvOptions {
	bool smoothed_bounds = false;            // adds q1_smooth,q3_smooth
	std::optional<double> anomaly_threshold; // adds anomaly_flag
};

/// Writes per-step records as CSV:
/// timestamp,actual,forecast,q1,q3,iqr,diff_residual,norm_residual,sample_count,fallback_used
/// followed by the optional columns. Absent values are empty cells.
class RecordCsvWriter {
public:
	RecordCsvWriter(std::ostream &out, RecordCsvOptions options);

	void write_header();
	void write(const StepRecord &rec, double q1_smooth = std::numeric_limits<double>::quiet_NaN(),
	           double q3_smooth = std::numeric_limits<double>::quiet_NaN());

	std::size_t rows() const noexcept {
		return rows_;
	}
	std::size_t anomalies() const noexcept {
		return anomalies_;
	}

private:
	std::ostream &out_;
	RecordCsvOptions options_;
	std::size_t rows_ = 0;
	std::size_t anomalies_ = 0;
};

/// |normalized residual| > threshold.
bool is_anomaly(const StepRecord &rec, double threshold) noexcept;

/// Shortest round-trip decimal form; empty for NaN.
std::string format_number(double v);

} // namespace qbsd
