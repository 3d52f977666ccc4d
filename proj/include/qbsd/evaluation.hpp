#pragma once

#include "qbsd/baselines.hpp"
#include "qbsd/core.hpp"
#include "qbsd/datasets.hpp"
#include "qbsd/engine.hpp"
#include "qbsd/metrics.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qbsd {

/// QBSD settings not carried by the dataset descriptor; the scheme comes from
/// the descriptor.
struct QbsdMethod {
	double c = 1.0;
	std::size_t min_samples = kDefaultMinSamples;
};

using EvalMethod = std::variant<QbsdMethod, BaselineSpec>;

std::string method_name(const EvalMethod &method);

/// One test slot. forecast/residuals are empty when the model skipped it.
struct StepRecord {
	std::int64_t timestamp = 0;
	double actual = 0.0;
	std::optional<ForecastOutput> forecast;
	std::optional<Residuals> residuals;
};

struct EvalResult {
	std::string method;
	std::optional<MetricsReport> report; // empty when no slot produced a forecast
	std::vector<StepRecord> records;
	std::size_t evaluated = 0;
	std::size_t skipped = 0;

	/// Forecasts of the evaluated slots, in order.
	std::vector<double> forecasts() const;
	std::vector<double> actuals() const;
};

/// Model with a history buffer of exactly the descriptor's training window.
std::unique_ptr<StreamingModel> make_model(const EvalMethod &method, const DatasetDescriptor &desc);

/// Epoch-second bounds of the test range; defaults to everything after the
/// first training window of the frame.
std::pair<std::int64_t, std::int64_t> test_range(const SeriesFrame &frame, const DatasetDescriptor &desc);

/// Values strictly before the test range.
std::vector<double> training_values(const SeriesFrame &frame, const DatasetDescriptor &desc);

/// Moving-training-window evaluation: every test slot is forecast from the
/// trailing train_window of history only, then its observation is absorbed.
/// Slots the model cannot forecast are counted in `skipped` and left out of
/// the metrics. Throws InsufficientHistory when the window is shorter than
/// the method's span or the frame starts too late to warm up.
EvalResult rolling_evaluate(const SeriesFrame &frame, const EvalMethod &method, const DatasetDescriptor &desc);

} // namespace qbsd
