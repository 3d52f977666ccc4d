#include "commands.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

namespace qbsd::cli {

namespace {

using nlohmann::json;

struct MethodOutcome {
	EvalResult result;
	std::optional<WilcoxonResult> test; // against the first qbsd method
};

struct SeriesOutcome {
	std::string label;
	double c = 1.0;
	std::vector<MethodOutcome> methods;
};

std::string fixed(double v, int digits) {
	if (std::isnan(v)) {
		return "n/a";
	}
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", digits, v);
	return buf;
}

std::string pad(std::string text, std::size_t width) {
	if (text.size() < width) {
		text.append(width - text.size(), ' ');
	}
	return text;
}

std::string sanitize(const std::string &text) {
	std::string out;
	for (char ch : text) {
		out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' ? ch : '_';
	}
	while (!out.empty() && out.back() == '_') {
		out.pop_back();
	}
	return out;
}

std::ofstream open_output(const std::string &path) {
	std::ofstream os(path, std::ios::binary);
	if (!os) {
		throw IoError("cannot write '" + path + "'");
	}
	return os;
}

QbsdMethod qbsd_method(const RunConfig &cfg, double c) {
	return QbsdMethod {c, cfg.min_samples};
}

std::vector<EvalMethod> parse_methods(const RunConfig &cfg, const Granularity &g, double c) {
	if (cfg.methods.empty()) {
		throw ConfigError("--method: at least one method is required");
	}
	std::vector<EvalMethod> out;
	for (const auto &m : cfg.methods) {
		out.push_back(parse_method(m, g, qbsd_method(cfg, c)));
	}
	return out;
}

void check_c(const RunConfig &cfg) {
	if (cfg.c && !(*cfg.c > 0.0)) {
		throw ConfigError("--c must be positive");
	}
	if (cfg.c_floor && !(*cfg.c_floor > 0.0)) {
		throw ConfigError("--c-floor must be positive");
	}
	if (cfg.min_samples < 1) {
		throw ConfigError("--min-samples must be at least 1");
	}
}

double resolve_c(const RunConfig &cfg, std::span<const double> training) {
	if (cfg.c) {
		return *cfg.c;
	}
	double floor = 1e-6;
	if (cfg.c_floor) {
		floor = *cfg.c_floor;
	} else if (std::all_of(training.begin(), training.end(), [](double v) { return v == std::round(v); })) {
		floor = 1.0;
	}
	return contingency_constant(training, floor);
}

SynthSpec synth_spec(const RunConfig &cfg) {
	if (cfg.days < 1 || cfg.slots_per_day < 1) {
		throw ConfigError("--days and --slots-per-day must be positive");
	}
	if (cfg.noise < 0.0) {
		throw ConfigError("--noise must be non-negative");
	}
	SynthSpec spec;
	spec.days = cfg.days;
	spec.slots_per_day = cfg.slots_per_day;
	spec.noise_std = cfg.noise;
	spec.weekend_scale = cfg.weekend_scale;
	spec.seed = cfg.seed;
	if (cfg.start) {
		const auto ts = parse_timestamp(*cfg.start);
		if (!ts) {
			throw ConfigError("--start: cannot parse timestamp '" + *cfg.start + "'");
		}
		spec.start_epoch = *ts;
	}
	if (!cfg.anomalies.empty()) {
		try {
			spec.anomalies = parse_injections(cfg.anomalies);
		} catch (const Error &e) {
			throw ConfigError(std::string("--anomalies: ") + e.what());
		}
	}
	return spec;
}

std::optional<WilcoxonResult> compare(const EvalResult &reference, const EvalResult &other) {
	std::vector<double> ref_err;
	std::vector<double> other_err;
	const auto n = std::min(reference.records.size(), other.records.size());
	for (std::size_t i = 0; i < n; ++i) {
		const auto &a = reference.records[i];
		const auto &b = other.records[i];
		if (a.forecast && b.forecast && a.timestamp == b.timestamp) {
			ref_err.push_back(std::abs(a.actual - a.forecast->forecast));
			other_err.push_back(std::abs(b.actual - b.forecast->forecast));
		}
	}
	try {
		// Alternative: the other method's errors exceed the reference's.
		return wilcoxon_signed_rank(other_err, ref_err, Alternative::Greater);
	} catch (const Error &e) {
		if (e.code() == ErrorCode::TooFewPairs) {
			return std::nullopt;
		}
		throw;
	}
}

SeriesOutcome evaluate_series(const std::string &label, const SeriesFrame &frame, const DatasetDescriptor &desc,
                              const RunConfig &cfg) {
	SeriesOutcome outcome;
	outcome.label = label;
	const bool needs_c = !cfg.c && std::any_of(cfg.methods.begin(), cfg.methods.end(),
	                                           [](const std::string &m) { return m == "qbsd"; });
	outcome.c = needs_c ? resolve_c(cfg, training_values(frame, desc)) : cfg.c.value_or(1.0);
	const auto methods = parse_methods(cfg, desc.frequency, outcome.c);

	std::optional<std::size_t> reference;
	for (const auto &m : methods) {
		MethodOutcome mo {rolling_evaluate(frame, m, desc), std::nullopt};
		if (!reference && std::holds_alternative<QbsdMethod>(m)) {
			reference = outcome.methods.size();
		}
		outcome.methods.push_back(std::move(mo));
	}
	if (reference) {
		for (std::size_t i = 0; i < outcome.methods.size(); ++i) {
			if (i != *reference) {
				outcome.methods[i].test = compare(outcome.methods[*reference].result, outcome.methods[i].result);
			}
		}
	}
	return outcome;
}

std::string records_path(const std::string &base, const std::string &label, const std::string &method,
                         bool per_series, bool per_method) {
	if (!per_series && !per_method) {
		return base;
	}
	std::filesystem::path p(base);
	std::string stem = p.stem().string();
	if (per_series) {
		stem += "_" + sanitize(label);
	}
	if (per_method) {
		stem += "_" + sanitize(method);
	}
	return (p.parent_path() / (stem + p.extension().string())).string();
}

void write_records(const std::string &path, const EvalResult &result) {
	auto os = open_output(path);
	RecordCsvWriter writer(os, {});
	writer.write_header();
	for (const auto &rec : result.records) {
		writer.write(rec);
	}
	if (!os) {
		throw IoError("failed writing '" + path + "'");
	}
}

json number_or_null(double v) {
	return std::isfinite(v) ? json(v) : json(nullptr);
}

json to_json(const std::vector<SeriesOutcome> &outcomes, const DatasetDescriptor &desc) {
	json rows = json::array();
	for (const auto &s : outcomes) {
		for (const auto &m : s.methods) {
			json row {{"series", s.label},
			          {"method", m.result.method},
			          {"evaluated", m.result.evaluated},
			          {"skipped", m.result.skipped},
			          {"c", s.c}};
			if (m.result.report) {
				const auto &r = *m.result.report;
				row["mae"] = number_or_null(r.mae);
				row["mse"] = number_or_null(r.mse);
				row["rmse"] = number_or_null(r.rmse);
				row["mape"] = number_or_null(r.mape);
				row["r2"] = number_or_null(r.r2);
				row["mape_excluded"] = r.mape_excluded_count;
			}
			if (m.test) {
				row["wilcoxon"] = {{"p_value", m.test->p_value},
				                   {"statistic", m.test->statistic},
				                   {"n", m.test->n},
				                   {"exact", m.test->exact},
				                   {"alternative", "greater"}};
			}
			rows.push_back(std::move(row));
		}
	}
	return {{"dataset", desc.name},
	        {"scheme", desc.scheme.describe()},
	        {"k", desc.k},
	        {"train_window_slots", desc.train_window_slots},
	        {"results", std::move(rows)}};
}

void print_table(std::ostream &out, const std::vector<SeriesOutcome> &outcomes) {
	out << pad("series", 20) << pad("method", 24) << pad("n", 8) << pad("skipped", 9) << pad("mae", 14)
	    << pad("rmse", 14) << pad("mape", 10) << pad("r2", 10) << "p_value\n";
	for (const auto &s : outcomes) {
		for (const auto &m : s.methods) {
			out << pad(s.label, 20) << pad(m.result.method, 24) << pad(std::to_string(m.result.evaluated), 8)
			    << pad(std::to_string(m.result.skipped), 9);
			if (m.result.report) {
				const auto &r = *m.result.report;
				out << pad(fixed(r.mae, 4), 14) << pad(fixed(r.rmse, 4), 14) << pad(fixed(r.mape, 2), 10)
				    << pad(fixed(r.r2, 4), 10);
			} else {
				out << pad("n/a", 14) << pad("n/a", 14) << pad("n/a", 10) << pad("n/a", 10);
			}
			out << (m.test ? fixed(m.test->p_value, 4) : std::string("-")) << '\n';
		}
	}
}

void print_csv(std::ostream &out, const std::vector<SeriesOutcome> &outcomes) {
	out << "series,method,evaluated,skipped,mae,mse,rmse,mape,r2,mape_excluded,p_value\n";
	for (const auto &s : outcomes) {
		for (const auto &m : s.methods) {
			out << s.label << ',' << m.result.method << ',' << m.result.evaluated << ',' << m.result.skipped << ',';
			if (m.result.report) {
				const auto &r = *m.result.report;
				out << format_number(r.mae) << ',' << format_number(r.mse) << ',' << format_number(r.rmse) << ','
				    << format_number(r.mape) << ',' << format_number(r.r2) << ',' << r.mape_excluded_count << ',';
			} else {
				out << ",,,,,,";
			}
			out << (m.test ? format_number(m.test->p_value) : std::string()) << '\n';
		}
	}
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
/// failure in index order.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
	std::vector<std::exception_ptr> errors(n);
	std::atomic<std::size_t> next {0};
	auto worker = [&] {
		for (std::size_t i = next++; i < n; i = next++) {
			try {
				fn(i);
			} catch (...) {
				errors[i] = std::current_exception();
			}
		}
	};
	const auto count = std::min<std::size_t>(std::max(1u, threads), n);
	std::vector<std::thread> pool;
	for (std::size_t t = 1; t < count; ++t) {
		pool.emplace_back(worker);
	}
	worker();
	for (auto &th : pool) {
		th.join();
	}
	for (auto &e : errors) {
		if (e) {
			std::rethrow_exception(e);
		}
	}
}

std::unique_ptr<StreamingModel> streaming_model(const EvalMethod &method, const DatasetDescriptor &desc, double c) {
	const auto capacity = static_cast<std::size_t>(desc.train_window_slots);
	if (const auto *q = std::get_if<QbsdMethod>(&method)) {
		return std::make_unique<RollingForecaster>(QbsdConfig {desc.scheme, c, q->min_samples}, desc.frequency,
		                                           capacity);
	}
	const auto &spec = std::get<BaselineSpec>(method);
	if (lookback(spec) + 1 > desc.train_window_slots) {
		throw ConfigError("training window is shorter than the " + to_string(spec) + " lookback");
	}
	return std::make_unique<BaselineForecaster>(spec, c, capacity);
}

int stream_records(const RunConfig &cfg, std::optional<double> threshold, std::ostream &out, std::ostream &err) {
	check_c(cfg);
	const auto desc = resolve_descriptor(cfg);
	const auto smoother = resolve_smoother(cfg);
	if (cfg.inputs.size() != 1) {
		throw ConfigError("--input: exactly one input file is required (use - for standard input)");
	}
	if (cfg.methods.size() != 1) {
		throw ConfigError("--method: streaming commands take a single method");
	}
	const double c = cfg.c.value_or(1.0);
	const auto method = parse_method(cfg.methods.front(), desc.frequency, qbsd_method(cfg, c));
	auto model = streaming_model(method, desc, c);

	std::ifstream file;
	std::istream *in = &std::cin;
	if (cfg.inputs.front() != "-") {
		file.open(cfg.inputs.front(), std::ios::binary);
		if (!file) {
			throw IoError("cannot open '" + cfg.inputs.front() + "'");
		}
		in = &file;
	}
	std::ofstream out_file;
	std::ostream *os = &out;
	if (!cfg.output.empty()) {
		out_file = open_output(cfg.output);
		os = &out_file;
	}

	const bool smoothing = !std::holds_alternative<NoSmoother>(smoother);
	RecordCsvWriter writer(*os, {smoothing, threshold});
	writer.write_header();

	StreamingSmoother q1_smoother(smoother);
	StreamingSmoother q3_smoother(smoother);
	std::deque<StepRecord> pending;
	std::vector<double> q1_out;
	std::vector<double> q3_out;
	auto drain = [&] {
		for (std::size_t i = 0; i < q1_out.size(); ++i) {
			writer.write(pending.front(), q1_out[i], q3_out[i]);
			pending.pop_front();
		}
		q1_out.clear();
		q3_out.clear();
	};

	const auto &g = desc.frequency;
	CsvSeriesReader reader(*in, desc.timestamp_column, desc.target_column, g);
	while (auto point = reader.next()) {
		const auto ts = to_timestamp(point->slot, g);
		if (desc.test_end && ts > *desc.test_end) {
			break;
		}
		if (desc.test_start && ts < *desc.test_start) {
			model->ingest(point->slot, point->value);
			continue;
		}
		const auto res = model->step(point->slot, point->value);
		StepRecord rec {ts, point->value, res.forecast, res.residuals};
		if (!smoothing) {
			writer.write(rec);
			continue;
		}
		const double nan = std::numeric_limits<double>::quiet_NaN();
		q1_smoother.push(rec.forecast ? rec.forecast->q1 : nan, q1_out);
		q3_smoother.push(rec.forecast ? rec.forecast->q3 : nan, q3_out);
		pending.push_back(std::move(rec));
		drain();
	}
	if (smoothing) {
		q1_smoother.flush(q1_out);
		q3_smoother.flush(q3_out);
		drain();
	}
	os->flush();
	if (!*os) {
		throw IoError("failed writing output");
	}
	if (threshold) {
		// Keep the summary out of a CSV that is going to standard output.
		auto &summary = cfg.output.empty() ? err : out;
		summary << "anomalies: " << writer.anomalies() << " (threshold " << *threshold << ", " << writer.rows()
		        << " rows)\n";
	}
	return kExitOk;
}

void print_bench(std::ostream &out, const std::vector<std::string> &names, const std::vector<std::string> &buffers,
                 const std::vector<LatencyStats> &stats) {
	out << pad("method", 28) << pad("buffer", 10) << pad("median_us", 12) << pad("p95_us", 12) << pad("mean_us", 12)
	    << "forecasts\n";
	for (std::size_t i = 0; i < stats.size(); ++i) {
		out << pad(names[i], 28) << pad(buffers[i], 10) << pad(fixed(stats[i].median_ns / 1e3, 3), 12)
		    << pad(fixed(stats[i].p95_ns / 1e3, 3), 12) << pad(fixed(stats[i].mean_ns / 1e3, 3), 12)
		    << stats[i].count << '\n';
	}
}

} // namespace

int exit_code_for(ErrorCode code) noexcept {
	switch (code) {
	case ErrorCode::InvalidGranularity:
	case ErrorCode::InvalidScheme:
	case ErrorCode::InvalidConstant:
	case ErrorCode::InvalidConfig:
	case ErrorCode::InvalidWindow:
		return kExitConfig;
	default:
		return kExitData;
	}
}

int cmd_evaluate(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
	check_c(cfg);
	if (cfg.format != "table" && cfg.format != "csv" && cfg.format != "json") {
		throw ConfigError("--format must be table, csv or json");
	}
	RunConfig effective = cfg;
	const bool synthetic = cfg.inputs.empty();
	if (synthetic) {
		if (!cfg.dataset.empty() && cfg.dataset != "synthetic") {
			throw ConfigError("--input is required for dataset '" + cfg.dataset + "'");
		}
		effective.dataset = "synthetic";
	}
	auto desc = resolve_descriptor(effective);
	// Validate every flag before touching data.
	resolve_smoother(cfg);
	parse_methods(effective, desc.frequency, 1.0);

	std::vector<SeriesOutcome> outcomes;
	if (synthetic) {
		auto spec = synth_spec(cfg);
		if (spec.slots_per_day * desc.frequency.interval_seconds != kSecondsPerDay) {
			desc.frequency = Granularity::from_interval(kSecondsPerDay / spec.slots_per_day);
		}
		if (!cfg.test_start) {
			desc.test_start.reset();
		}
		if (!cfg.test_end) {
			desc.test_end.reset();
		}
		const auto frame = generate_synthetic(spec);
		outcomes.push_back(evaluate_series("synthetic", frame, desc, effective));
	} else {
		outcomes.resize(cfg.inputs.size());
		parallel_for(cfg.inputs.size(), cfg.parallel, [&](std::size_t i) {
			const auto &path = cfg.inputs[i];
			const auto frame = load_csv(path, desc.timestamp_column, desc.target_column, desc.frequency);
			outcomes[i] = evaluate_series(std::filesystem::path(path).stem().string(), frame, desc, effective);
		});
	}

	if (!cfg.records.empty()) {
		const bool per_series = outcomes.size() > 1;
		const bool per_method = cfg.methods.size() > 1;
		for (const auto &s : outcomes) {
			for (const auto &m : s.methods) {
				write_records(records_path(cfg.records, s.label, m.result.method, per_series, per_method), m.result);
			}
		}
	}
	const auto report = to_json(outcomes, desc);
	if (!cfg.report.empty()) {
		auto os = open_output(cfg.report);
		os << report.dump(2) << '\n';
	}
	if (cfg.format == "json") {
		out << report.dump(2) << '\n';
	} else if (cfg.format == "csv") {
		print_csv(out, outcomes);
	} else {
		print_table(out, outcomes);
	}
	for (const auto &s : outcomes) {
		for (const auto &m : s.methods) {
			if (!m.result.report) {
				err << "warning: " << s.label << " / " << m.result.method << ": no test slot produced a forecast\n";
			}
		}
	}
	return kExitOk;
}

int cmd_forecast(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
	return stream_records(cfg, std::nullopt, out, err);
}

int cmd_anomaly(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
	if (!(cfg.threshold > 0.0)) {
		throw ConfigError("--threshold must be positive");
	}
	return stream_records(cfg, cfg.threshold, out, err);
}

int cmd_bench(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
	if (cfg.forecasts < 1) {
		throw ConfigError("--forecasts must be positive");
	}
	check_c(cfg);
	const auto desc = resolve_descriptor(cfg);
	resolve_smoother(cfg);
	const auto &g = desc.frequency;
	const auto methods = parse_methods(cfg, g, cfg.c.value_or(1.0));
	const QbsdConfig qcfg {desc.scheme, cfg.c.value_or(1.0), cfg.min_samples};

	constexpr std::int64_t kLongBufferWeeks = 16;
	const auto short_capacity = default_capacity(desc.scheme, g);
	const auto long_capacity =
	    std::max<std::size_t>(short_capacity, static_cast<std::size_t>(kLongBufferWeeks * g.slots_per_week()));
	const auto warmup = long_capacity;

	auto spec = synth_spec(cfg);
	spec.slots_per_day = g.slots_per_day;
	spec.days = static_cast<std::int64_t>((warmup + cfg.forecasts) / g.slots_per_day) + 2;
	if (spec.noise_std == 0.0) {
		spec.noise_std = 5.0;
	}
	const auto frame = generate_synthetic(spec);

	std::vector<std::unique_ptr<StreamingModel>> models;
	std::vector<std::string> names;
	std::vector<std::string> buffers;
	auto weeks = [&](std::size_t capacity) {
		return fixed(static_cast<double>(capacity) / static_cast<double>(g.slots_per_week()), 0) + "w";
	};
	models.push_back(std::make_unique<RollingForecaster>(qcfg, g, short_capacity));
	names.push_back("qbsd");
	buffers.push_back(weeks(short_capacity));
	models.push_back(std::make_unique<RollingForecaster>(qcfg, g, long_capacity));
	names.push_back("qbsd");
	buffers.push_back(weeks(long_capacity));
	for (const auto &m : methods) {
		if (const auto *b = std::get_if<BaselineSpec>(&m)) {
			models.push_back(std::make_unique<BaselineForecaster>(*b, qcfg.c, short_capacity));
			names.push_back(to_string(*b));
			buffers.push_back(weeks(short_capacity));
		}
	}
	std::vector<StreamingModel *> ptrs;
	for (auto &m : models) {
		ptrs.push_back(m.get());
	}
	const auto stats = measure_step_latency(ptrs, frame, warmup, cfg.forecasts);
	const double ratio = stats[1].median_ns / stats[0].median_ns;

	if (cfg.format == "json") {
		json rows = json::array();
		for (std::size_t i = 0; i < stats.size(); ++i) {
			rows.push_back({{"method", names[i]},
			                {"buffer", buffers[i]},
			                {"median_ns", stats[i].median_ns},
			                {"p95_ns", stats[i].p95_ns},
			                {"mean_ns", stats[i].mean_ns},
			                {"forecasts", stats[i].count}});
		}
		out << json {{"rows", rows}, {"history_scaling_ratio", ratio}, {"seed", spec.seed}}.dump(2) << '\n';
	} else {
		print_bench(out, names, buffers, stats);
		out << "history scaling (median " << buffers[1] << " / " << buffers[0] << "): " << fixed(ratio, 3) << '\n';
		out << "reference timings, interpreted implementation, one train+predict cycle: "
		       "Births2015 14.3 ms, Electricity Demand 13.2 ms, Bitcoin 13.6 ms, Electricity 16.4 ms, "
		       "Weather 21.5 ms, EON1-Cell-F 8.72 ms\n";
	}
	if (cfg.forecasts < 10000) {
		err << "note: fewer than 10000 timed forecasts; medians may be noisy\n";
	}
	return kExitOk;
}

int cmd_synth(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
	const auto spec = synth_spec(cfg);
	const auto frame = generate_synthetic(spec);
	if (cfg.output.empty()) {
		write_frame_csv(out, frame);
		err << "seed: " << spec.seed << '\n';
		return kExitOk;
	}
	auto os = open_output(cfg.output);
	write_frame_csv(os, frame);
	os.flush();
	if (!os) {
		throw IoError("failed writing '" + cfg.output + "'");
	}
	out << "seed: " << spec.seed << '\n';
	out << "wrote " << frame.size() << " rows to " << cfg.output << '\n';
	return kExitOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
	RunConfig cfg;
	CLI::App app {"Quartile-based seasonal forecaster: evaluation, streaming forecasts, anomaly flags, benchmarks",
	              "qbsd"};
	app.set_config("--config", "", "Flat key=value file mirroring the long flag names; flags override it");
	app.require_subcommand(1);
	app.fallthrough();

	app.add_option("-i,--input", cfg.inputs, "Input CSV (repeat for several series; - reads standard input)");
	app.add_option("-o,--output", cfg.output, "Output path (streamed records or synthetic CSV)");
	app.add_option("--records", cfg.records, "Per-step record CSV path for evaluate");
	app.add_option("--report", cfg.report, "Machine-readable JSON report path for evaluate");
	app.add_option("--dataset", cfg.dataset, "Builtin dataset descriptor name");
	app.add_option("--method", cfg.methods,
	               "qbsd, seasonal-naive[:lag], persistence, moving-average[:window] (repeatable)");
	app.add_option("--k", cfg.k, "Context period in slots");
	app.add_option("--scheme", cfg.scheme, "weekly4, weekly6, weekly_plus_yearly or lags like 0:past,7d:sym,14d:fwd");
	app.add_option("--interval", cfg.interval, "Sampling interval in seconds (custom series; default 900)");
	app.add_option("--train-window", cfg.train_window_days, "Retained history in days");
	app.add_option("--test-start", cfg.test_start, "First test timestamp");
	app.add_option("--test-end", cfg.test_end, "Last test timestamp");
	app.add_option("--ts-col", cfg.ts_col, "Timestamp column name");
	app.add_option("--value-col", cfg.value_col, "Value column name");
	app.add_option("--c", cfg.c, "Contingency constant (default: 1st percentile of training data)");
	app.add_option("--c-floor", cfg.c_floor, "Lower bound when c is derived from training data");
	app.add_option("--min-samples", cfg.min_samples, "Fewest subset samples that still yield a forecast");
	app.add_option("--smoother", cfg.smoother, "none, sg:<window>:<order> or ma:<window>");
	app.add_option("--threshold", cfg.threshold, "Anomaly threshold on |normalized residual|");
	app.add_option("--seed", cfg.seed, "Random seed for synthetic data");
	app.add_option("--parallel", cfg.parallel, "Worker threads for several inputs");
	app.add_option("--format", cfg.format, "table, csv or json");
	app.add_option("--days", cfg.days, "Synthetic series length in days");
	app.add_option("--slots-per-day", cfg.slots_per_day, "Synthetic samples per day");
	app.add_option("--noise", cfg.noise, "Synthetic gaussian noise standard deviation");
	app.add_option("--weekend-scale", cfg.weekend_scale, "Synthetic weekend amplitude factor");
	app.add_option("--anomalies", cfg.anomalies, "Synthetic injections, e.g. 3000:+500,4000:-200");
	app.add_option("--start", cfg.start, "Synthetic start timestamp");

	auto *evaluate = app.add_subcommand("evaluate", "Moving-window evaluation with metrics and significance tests");
	auto *forecast = app.add_subcommand("forecast", "Stream per-step forecast records from a CSV");
	auto *anomaly = app.add_subcommand("anomaly", "Stream records with an anomaly flag column");
	auto *bench = app.add_subcommand("bench", "Per-forecast latency benchmark");
	bench->add_option("--forecasts", cfg.forecasts, "Timed forecasts per model");
	auto *synth = app.add_subcommand("synth", "Write a synthetic KPI-like series");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitOk : kExitConfig;
	}

	try {
		if (evaluate->parsed()) {
			return cmd_evaluate(cfg, out, err);
		}
		if (forecast->parsed()) {
			return cmd_forecast(cfg, out, err);
		}
		if (anomaly->parsed()) {
			return cmd_anomaly(cfg, out, err);
		}
		if (bench->parsed()) {
			return cmd_bench(cfg, out, err);
		}
		if (synth->parsed()) {
			return cmd_synth(cfg, out, err);
		}
	} catch (const ConfigError &e) {
		err << "config error: " << e.what() << '\n';
		return kExitConfig;
	} catch (const Error &e) {
		const int code = exit_code_for(e.code());
		err << (code == kExitConfig ? "config error" : "data error") << " [" << to_string(e.code())
		    << "]: " << e.what() << '\n';
		return code;
	} catch (const std::exception &e) {
		err << "error: " << e.what() << '\n';
		return kExitData;
	}
	return kExitConfig;
}

} // namespace qbsd::cli
