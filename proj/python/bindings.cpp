#include "qbsd/qbsd.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

py::dict forecast_dict(const qbsd::ForecastOutput &f) {
	py::dict d;
	d["forecast"] = f.forecast;
	d["q1"] = f.q1;
	d["q3"] = f.q3;
	d["iqr"] = f.iqr;
	d["sample_count"] = f.sample_count;
	d["fallback_used"] = f.fallback_used;
	return d;
}

py::dict metrics_dict(const qbsd::MetricsReport &r) {
	py::dict d;
	d["mae"] = r.mae;
	d["mse"] = r.mse;
	d["rmse"] = r.rmse;
	d["mape"] = r.mape;
	d["r2"] = r.r2;
	d["n"] = r.n;
	d["mape_excluded_count"] = r.mape_excluded_count;
	return d;
}

qbsd::SeasonalityScheme make_scheme(const std::string &name, std::int64_t k, const qbsd::Granularity &g) {
	if (name == "weekly_plus_yearly") {
		return qbsd::weekly_plus_yearly_scheme(k, g);
	}
	if (name.rfind("weekly", 0) == 0 && name.size() > 6) {
		return qbsd::default_weekly_scheme(std::stoi(name.substr(6)), k, g);
	}
	throw qbsd::InvalidScheme("unknown scheme '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_qbsd, m) {
	m.doc() = "Quartile-based seasonal forecasting";

	auto base = py::register_exception<qbsd::Error>(m, "QbsdError", PyExc_ValueError);
	py::register_exception<qbsd::ParseError>(m, "ParseError", base.ptr());

	py::class_<qbsd::Granularity>(m, "Granularity")
	    .def(py::init(&qbsd::Granularity::from_interval), py::arg("interval_seconds"))
	    .def_readonly("interval_seconds", &qbsd::Granularity::interval_seconds)
	    .def_readonly("slots_per_day", &qbsd::Granularity::slots_per_day)
	    .def_property_readonly("slots_per_week", &qbsd::Granularity::slots_per_week)
	    .def("__repr__", [](const qbsd::Granularity &g) {
		    return "Granularity(" + std::to_string(g.interval_seconds) + ")";
	    });

	py::class_<qbsd::SeasonalityScheme>(m, "Scheme")
	    .def(py::init(&make_scheme), py::arg("name"), py::arg("k"), py::arg("granularity"))
	    .def_property_readonly("subset_size", &qbsd::SeasonalityScheme::subset_size)
	    .def_property_readonly("history_span", &qbsd::SeasonalityScheme::history_span)
	    .def("describe", &qbsd::SeasonalityScheme::describe)
	    .def("resolve", [](const qbsd::SeasonalityScheme &s, std::int64_t t) {
		    std::vector<std::int64_t> out;
		    for (const auto slot : qbsd::resolve_subset_slots(qbsd::SlotCoord {t}, s)) {
			    out.push_back(slot.global_slot);
		    }
		    return out;
	    }, py::arg("slot"), "Subset slot indices for a target slot");

	m.def("percentile", [](std::vector<double> v, double p) { return qbsd::percentile(v, p); }, py::arg("values"),
	      py::arg("p"));
	m.def("quartiles", [](std::vector<double> v) {
		const auto q = qbsd::compute_quartiles(v);
		return py::make_tuple(q.q1, q.q3, q.iqr);
	}, py::arg("values"), "(q1, q3, iqr)");
	m.def("forecast_from_subset", [](std::vector<double> v) {
		std::sort(v.begin(), v.end());
		return forecast_dict(qbsd::forecast_from_sorted(v));
	}, py::arg("values"));
	m.def("residuals", [](double actual, double forecast, double iqr, double c) {
		qbsd::ForecastOutput f;
		f.forecast = forecast;
		f.iqr = iqr;
		const auto r = qbsd::compute_residuals(actual, f, c);
		return py::make_tuple(r.difference, r.normalized);
	}, py::arg("actual"), py::arg("forecast"), py::arg("iqr"), py::arg("c") = 1.0, "(difference, normalized)");

	py::class_<qbsd::RollingForecaster>(m, "RollingForecaster")
	    .def(py::init([](const qbsd::SeasonalityScheme &scheme, const qbsd::Granularity &g, double c,
	                     std::size_t min_samples, std::size_t capacity) {
		         return qbsd::RollingForecaster(qbsd::QbsdConfig {scheme, c, min_samples}, g, capacity);
	         }),
	         py::arg("scheme"), py::arg("granularity"), py::arg("c") = 1.0,
	         py::arg("min_samples") = qbsd::kDefaultMinSamples, py::arg("capacity") = 0)
	    .def("ingest", [](qbsd::RollingForecaster &f, std::int64_t slot, double value) {
		    f.ingest(qbsd::SlotCoord {slot}, value);
	    }, py::arg("slot"), py::arg("value"))
	    .def("ingest_timestamps", [](qbsd::RollingForecaster &f, std::vector<std::pair<std::int64_t, double>> batch) {
		    f.ingest_timestamps(batch);
	    }, py::arg("batch"))
	    .def("forecast_at", [](const qbsd::RollingForecaster &f, std::int64_t slot) {
		    return forecast_dict(f.forecast_at(qbsd::SlotCoord {slot}));
	    }, py::arg("slot"))
	    .def("observe", [](qbsd::RollingForecaster &f, std::int64_t slot, double value) {
		    const auto [res, fo] = f.observe(qbsd::SlotCoord {slot}, value);
		    auto d = forecast_dict(fo);
		    d["diff_residual"] = res.difference;
		    d["norm_residual"] = res.normalized;
		    return d;
	    }, py::arg("slot"), py::arg("value"))
	    .def_property_readonly("history_size", [](const qbsd::RollingForecaster &f) { return f.history().size(); })
	    .def_property_readonly("capacity", [](const qbsd::RollingForecaster &f) { return f.history().capacity(); });

	m.def("savgol_coefficients", &qbsd::savgol_coefficients, py::arg("window_length"), py::arg("polyorder"),
	      py::arg("derivative") = 0);
	m.def("smooth", [](std::vector<double> series, const std::string &spec) {
		return qbsd::smooth_runs(series, qbsd::parse_smoother(spec));
	}, py::arg("series"), py::arg("spec"), "NaN-separated runs smoothed independently");

	m.def("evaluate", [](std::vector<double> actual, std::vector<double> predicted) {
		return metrics_dict(qbsd::evaluate(actual, predicted));
	}, py::arg("actual"), py::arg("predicted"));
	m.def("wilcoxon", [](std::vector<double> a, std::vector<double> b, const std::string &alternative,
	                     const std::string &method) {
		auto wm = qbsd::WilcoxonMethod::Auto;
		if (method == "exact") {
			wm = qbsd::WilcoxonMethod::Exact;
		} else if (method == "normal") {
			wm = qbsd::WilcoxonMethod::Normal;
		} else if (method != "auto") {
			throw qbsd::InvalidConfig("method must be auto, exact or normal");
		}
		const auto r = qbsd::wilcoxon_signed_rank(a, b, qbsd::parse_alternative(alternative), wm);
		py::dict d;
		d["statistic"] = r.statistic;
		d["p_value"] = r.p_value;
		d["n"] = r.n;
		d["exact"] = r.exact;
		return d;
	}, py::arg("a"), py::arg("b"), py::arg("alternative") = "two-sided", py::arg("method") = "auto");

	m.def("generate_synthetic", [](std::int64_t days, std::int64_t slots_per_day, double noise_std,
	                               std::uint64_t seed, std::vector<std::pair<std::int64_t, double>> anomalies) {
		qbsd::SynthSpec spec;
		spec.days = days;
		spec.slots_per_day = slots_per_day;
		spec.noise_std = noise_std;
		spec.seed = seed;
		for (const auto &[slot, mag] : anomalies) {
			spec.anomalies.push_back({slot, mag});
		}
		const auto frame = qbsd::generate_synthetic(spec);
		std::vector<std::pair<std::int64_t, double>> out;
		out.reserve(frame.size());
		for (const auto &p : frame.points) {
			out.emplace_back(qbsd::to_timestamp(p.slot, frame.granularity), p.value);
		}
		return out;
	}, py::arg("days") = 56, py::arg("slots_per_day") = 96, py::arg("noise_std") = 0.0, py::arg("seed") = 42,
	      py::arg("anomalies") = std::vector<std::pair<std::int64_t, double>> {},
	      "List of (epoch_seconds, value)");

	m.def("evaluate_dataset", [](const std::string &path, const std::string &dataset, const std::string &method,
	                             double c) {
		auto desc = qbsd::find_descriptor(dataset);
		if (!desc) {
			throw qbsd::InvalidConfig("unknown dataset '" + dataset + "'");
		}
		const auto frame = qbsd::load_csv(path, desc->timestamp_column, desc->target_column, desc->frequency);
		qbsd::EvalMethod em = qbsd::QbsdMethod {c};
		if (method == "seasonal-naive") {
			em = qbsd::BaselineSpec {qbsd::SeasonalNaive {qbsd::default_season_slots(desc->frequency)}};
		} else if (method == "persistence") {
			em = qbsd::BaselineSpec {qbsd::Persistence {}};
		} else if (method != "qbsd") {
			throw qbsd::InvalidConfig("unknown method '" + method + "'");
		}
		const auto result = qbsd::rolling_evaluate(frame, em, *desc);
		py::dict d;
		d["evaluated"] = result.evaluated;
		d["skipped"] = result.skipped;
		if (result.report) {
			d["metrics"] = metrics_dict(*result.report);
		}
		return d;
	}, py::arg("path"), py::arg("dataset"), py::arg("method") = "qbsd", py::arg("c") = 1.0);

	m.def("dataset_names", [] {
		std::vector<std::string> out;
		for (const auto &d : qbsd::builtin_descriptors()) {
			out.push_back(d.name);
		}
		return out;
	});
}
