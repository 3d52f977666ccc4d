#include "qbsd/bench.hpp"

#include "qbsd/error.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace qbsd {

namespace {

double quantile_of(std::vector<double> &v, double p) {
	const auto idx = static_cast<std::size_t>(p * static_cast<double>(v.size() - 1));
	std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
	return v[idx];
}

} // namespace

std::vector<LatencyStats> measure_step_latency(std::span<StreamingModel *const> models, const SeriesFrame &frame,
                                               std::size_t warmup, std::size_t forecasts) {
	if (frame.size() < warmup + forecasts) {
		throw SeriesTooShort("benchmark needs " + std::to_string(warmup + forecasts) + " points, frame has " +
		                     std::to_string(frame.size()));
	}
	if (forecasts == 0) {
		throw InvalidConfig("benchmark needs at least one forecast");
	}
	for (std::size_t i = 0; i < warmup; ++i) {
		for (auto *m : models) {
			m->ingest(frame.points[i].slot, frame.points[i].value);
		}
	}

	using clock = std::chrono::steady_clock;
	std::vector<std::vector<double>> samples(models.size(), std::vector<double>(forecasts));
	volatile double sink = 0.0;
	for (std::size_t i = 0; i < forecasts; ++i) {
		const auto &p = frame.points[warmup + i];
		// Rotate the call order so no model always runs first on a cold cache.
		for (std::size_t j = 0; j < models.size(); ++j) {
			const auto m = (i + j) % models.size();
			const auto t0 = clock::now();
			const auto r = models[m]->step(p.slot, p.value);
			const auto t1 = clock::now();
			if (r.forecast) {
				sink = sink + r.forecast->forecast;
			}
			samples[m][i] = std::chrono::duration<double, std::nano>(t1 - t0).count();
		}
	}

	std::vector<LatencyStats> out;
	out.reserve(models.size());
	for (auto &s : samples) {
		LatencyStats st;
		st.count = s.size();
		st.mean_ns = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
		st.median_ns = quantile_of(s, 0.5);
		st.p95_ns = quantile_of(s, 0.95);
		out.push_back(st);
	}
	return out;
}

} // namespace qbsd
