#include "qbsd/core.hpp"

#include "qbsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qbsd {

void QbsdConfig::validate() const {
	if (!(c > 0.0) || !std::isfinite(c)) {
		throw InvalidConstant("contingency constant must be a positive finite number");
	}
	if (min_samples < 3) {
		throw InvalidConfig("min_samples must be at least 3, got " + std::to_string(min_samples));
	}
}

double percentile_sorted(std::span<const double> sorted, double p) {
	if (sorted.empty()) {
		throw EmptyInput("percentile of an empty sample");
	}
	const double pos = p * static_cast<double>(sorted.size() - 1);
	const auto lo = static_cast<std::size_t>(std::floor(pos));
	if (lo + 1 >= sorted.size()) {
		return sorted.back();
	}
	const double frac = pos - static_cast<double>(lo);
	return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double percentile(std::span<const double> values, double p) {
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	return percentile_sorted(sorted, p);
}

Quartiles compute_quartiles(std::span<const double> values) {
	if (values.empty()) {
		throw EmptyInput("quartiles of an empty sample");
	}
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	const double q1 = percentile_sorted(sorted, 0.25);
	const double q3 = percentile_sorted(sorted, 0.75);
	return {q1, q3, q3 - q1};
}

ForecastOutput forecast_from_sorted(std::span<const double> sorted) {
	if (sorted.empty()) {
		throw EmptyInput("forecast from an empty subset");
	}
	ForecastOutput out;
	out.q1 = percentile_sorted(sorted, 0.25);
	out.q3 = percentile_sorted(sorted, 0.75);
	out.iqr = out.q3 - out.q1;
	out.sample_count = sorted.size();

	// Strict interior (q1, q3) of an ascending range is contiguous.
	const auto first = std::upper_bound(sorted.begin(), sorted.end(), out.q1);
	const auto last = std::lower_bound(first, sorted.end(), out.q3);
	if (first < last) {
		double sum = 0.0;
		for (auto it = first; it != last; ++it) {
			sum += *it;
		}
		out.forecast = sum / static_cast<double>(last - first);
		out.fallback_used = false;
	} else {
		out.forecast = percentile_sorted(sorted, 0.5);
		out.fallback_used = true;
	}
	return out;
}

SubsetForecast forecast_from_subset(std::span<const double> values) {
	if (values.empty()) {
		throw EmptyInput("forecast from an empty subset");
	}
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	const auto fo = forecast_from_sorted(sorted);
	return {fo.forecast, fo.fallback_used};
}

Residuals compute_residuals(double actual, const ForecastOutput &fo, double c) {
	if (!(c > 0.0)) {
		throw InvalidConstant("contingency constant must be positive");
	}
	const double diff = actual - fo.forecast;
	return {diff, diff / std::max(fo.iqr, c)};
}

double contingency_constant(std::span<const double> training_values, double floor) {
	if (training_values.empty()) {
		throw EmptyInput("contingency constant needs training data");
	}
	if (!(floor > 0.0)) {
		throw InvalidConstant("contingency floor must be positive");
	}
	return std::max(std::abs(percentile(training_values, 0.01)), floor);
}

ForecastOutput qbsd_step(const ContextualSubset &subset, const QbsdConfig &cfg) {
	if (subset.present_count() < cfg.required_samples()) {
		throw InsufficientHistory("only " + std::to_string(subset.present_count()) + " of " +
		                          std::to_string(subset.requested_size) + " subset samples present, need " +
		                          std::to_string(cfg.required_samples()));
	}
	std::vector<double> sorted;
	sorted.reserve(subset.samples.size());
	for (const auto &s : subset.samples) {
		sorted.push_back(s.value);
	}
	std::sort(sorted.begin(), sorted.end());
	return forecast_from_sorted(sorted);
}

} // namespace qbsd
