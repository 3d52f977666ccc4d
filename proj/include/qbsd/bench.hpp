#pragma once

#include "qbsd/datasets.hpp"
#include "qbsd/engine.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qbsd {

struct LatencyStats {
	double median_ns = 0.0;
	double p95_ns = 0.0;
	double mean_ns = 0.0;
	std::size_t count = 0;
};

/// Feeds the first `warmup` points of the frame to every model, then times
/// each model's step() on the following `forecasts` points. Models are stepped
/// in lockstep, one timed call per model per point in rotating order, so drift
/// in machine load and cache warmth affects all of them alike.
std::vector<LatencyStats> measure_step_latency(std::span<StreamingModel *const> models, const SeriesFrame &frame,
                                               std::size_t warmup, std::size_t forecasts);

} // namespace qbsd
