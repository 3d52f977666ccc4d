#include "qbsd/evaluation.hpp"

#include "qbsd/error.hpp"
#include "qbsd/timestamps.hpp"

#include <cmath>

namespace qbsd {

namespace {

std::int64_t method_span(const EvalMethod &method, const DatasetDescriptor &desc) {
	if (std::holds_alternative<QbsdMethod>(method)) {
		return desc.scheme.history_span();
	}
	return lookback(std::get<BaselineSpec>(method));
}

} // namespace

std::string method_name(const EvalMethod &method) {
	if (std::holds_alternative<QbsdMethod>(method)) {
		return "qbsd";
	}
	return to_string(std::get<BaselineSpec>(method));
}

std::vector<double> EvalResult::forecasts() const {
	std::vector<double> out;
	for (const auto &r : records) {
		if (r.forecast) {
			out.push_back(r.forecast->forecast);
		}
	}
	return out;
}

std::vector<double> EvalResult::actuals() const {
	std::vector<double> out;
	for (const auto &r : records) {
		if (r.forecast) {
			out.push_back(r.actual);
		}
	}
	return out;
}

std::unique_ptr<StreamingModel> make_model(const EvalMethod &method, const DatasetDescriptor &desc) {
	const auto span = method_span(method, desc);
	if (desc.train_window_slots < span + 1) {
		throw InsufficientHistory("training window of " + std::to_string(desc.train_window_slots) +
		                          " slots is shorter than the " + std::to_string(span + 1) + " slots " +
		                          method_name(method) + " needs");
	}
	const auto capacity = static_cast<std::size_t>(desc.train_window_slots);
	if (const auto *q = std::get_if<QbsdMethod>(&method)) {
		return std::make_unique<RollingForecaster>(QbsdConfig {desc.scheme, q->c, q->min_samples}, desc.frequency,
		                                           capacity);
	}
	return std::make_unique<BaselineForecaster>(std::get<BaselineSpec>(method), 1.0, capacity);
}

std::pair<std::int64_t, std::int64_t> test_range(const SeriesFrame &frame, const DatasetDescriptor &desc) {
	if (frame.empty()) {
		throw EmptyInput("series has no observations");
	}
	const auto &g = frame.granularity;
	const auto start = desc.test_start.value_or(to_timestamp(frame.points.front().slot + desc.train_window_slots, g));
	const auto end = desc.test_end.value_or(to_timestamp(frame.points.back().slot, g));
	return {start, end};
}

std::vector<double> training_values(const SeriesFrame &frame, const DatasetDescriptor &desc) {
	const auto [start, end] = test_range(frame, desc);
	std::vector<double> out;
	for (const auto &p : frame.points) {
		if (to_timestamp(p.slot, frame.granularity) >= start) {
			break;
		}
		out.push_back(p.value);
	}
	return out;
}

EvalResult rolling_evaluate(const SeriesFrame &frame, const EvalMethod &method, const DatasetDescriptor &desc) {
	if (!(frame.granularity == desc.frequency)) {
		throw InvalidConfig("series granularity does not match dataset '" + desc.name + "'");
	}
	auto model = make_model(method, desc);
	const auto &g = frame.granularity;
	const auto [start_ts, end_ts] = test_range(frame, desc);
	const auto start = align(start_ts, g);
	const auto end = align(end_ts, g);
	const auto span = method_span(method, desc);
	if (frame.points.front().slot.global_slot > start.global_slot - span) {
		throw InsufficientHistory("series starts at " + format_timestamp(to_timestamp(frame.points.front().slot, g)) +
		                          ", too late to warm up " + std::to_string(span) + " slots before the test start " +
		                          format_timestamp(start_ts));
	}

	EvalResult result;
	result.method = method_name(method);
	std::vector<double> actual;
	std::vector<double> predicted;
	for (const auto &p : frame.points) {
		if (p.slot < start) {
			model->ingest(p.slot, p.value);
			continue;
		}
		if (p.slot > end) {
			break;
		}
		auto step = model->step(p.slot, p.value);
		StepRecord rec {to_timestamp(p.slot, g), p.value, step.forecast, step.residuals};
		if (rec.forecast) {
			++result.evaluated;
			actual.push_back(p.value);
			predicted.push_back(rec.forecast->forecast);
		} else {
			++result.skipped;
		}
		result.records.push_back(std::move(rec));
	}
	if (!actual.empty()) {
		result.report = evaluate_lenient(actual, predicted);
	}
	return result;
}

} // namespace qbsd
