#pragma once

#include "qbsd/timegrid.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace qbsd {

struct Quartiles {
	double q1 = 0.0;
	double q3 = 0.0;
	double iqr = 0.0;
};

struct ForecastOutput {
	double forecast = 0.0;
	double q1 = 0.0;
	double q3 = 0.0;
	double iqr = 0.0;
	std::size_t sample_count = 0;
	bool fallback_used = false;

	friend bool operator==(const ForecastOutput &, const ForecastOutput &) = default;
};

struct Residuals {
	double difference = 0.0;
	double normalized = 0.0;

	friend bool operator==(const Residuals &, const Residuals &) = default;
};

using SubsetSample = SeriesPoint;

/// Samples actually present in history for one target, out of the
/// requested_size slots the scheme asks for.
struct ContextualSubset {
	std::vector<SubsetSample> samples;
	std::size_t requested_size = 0;

	std::size_t present_count() const noexcept {
		return samples.size();
	}
};

inline constexpr std::size_t kDefaultMinSamples = 4;

struct QbsdConfig {
	SeasonalityScheme scheme;
	double c = 1.0; // contingency constant
	std::size_t min_samples = kDefaultMinSamples;

	std::int64_t k() const noexcept {
		return scheme.context_period();
	}
	/// A complete subset always qualifies, even when it is smaller than
	/// min_samples (k = 0 gives three samples).
	std::size_t required_samples() const noexcept {
		return std::min(min_samples, scheme.subset_size());
	}
	/// Throws InvalidConstant / InvalidConfig.
	void validate() const;
};

/// Percentile of an ascending sample, linear interpolation between closest
/// ranks at position p * (n - 1).
double percentile_sorted(std::span<const double> sorted, double p);
double percentile(std::span<const double> values, double p);

Quartiles compute_quartiles(std::span<const double> values);

struct SubsetForecast {
	double forecast = 0.0;
	bool fallback_used = false;
};

/// Mean of the values strictly inside (Q1, Q3); the median when that interior
/// is empty.
SubsetForecast forecast_from_subset(std::span<const double> values);

/// Quartiles and forecast in one pass over an already sorted sample.
ForecastOutput forecast_from_sorted(std::span<const double> sorted);

Residuals compute_residuals(double actual, const ForecastOutput &fo, double c);

/// max(|P1(training)|, floor)
double contingency_constant(std::span<const double> training_values, double floor);

ForecastOutput qbsd_step(const ContextualSubset &subset, const QbsdConfig &cfg);

} // namespace qbsd
