#pragma once

#include "qbsd/engine.hpp"
#include "qbsd/timegrid.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace qbsd {

struct SeasonalNaive {
	std::int64_t season_slots = 1;
};
struct Persistence {};
struct MovingAverage {
	std::int64_t window_slots = 1;
};

using BaselineSpec = std::variant<SeasonalNaive, Persistence, MovingAverage>;

/// One week of slots for sub-daily data, 7 for daily data.
std::int64_t default_season_slots(const Granularity &g) noexcept;

std::string to_string(const BaselineSpec &spec);
void validate(const BaselineSpec &spec);
/// How far back the baseline reads, in slots.
std::int64_t lookback(const BaselineSpec &spec) noexcept;

/// Point forecast for t from strictly earlier history. Throws
/// InsufficientHistory when the required lag is missing.
double baseline_forecast(const SlotHistory &history, SlotCoord t, const BaselineSpec &spec);

/// Streaming wrapper with the same step contract as RollingForecaster. The
/// bounds of the emitted ForecastOutput are NaN; the normalized residual is
/// scaled by c alone.
class BaselineForecaster final : public StreamingModel {
public:
	BaselineForecaster(BaselineSpec spec, double c, std::size_t capacity);

	StepResult step(SlotCoord t, double value) override;
	void ingest(SlotCoord t, double value) override {
		history_.insert(t, value);
	}
	std::string name() const override {
		return to_string(spec_);
	}
	const SlotHistory &history() const override {
		return history_;
	}
	const BaselineSpec &spec() const noexcept {
		return spec_;
	}

private:
	BaselineSpec spec_;
	double c_;
	SlotHistory history_;
};

} // namespace qbsd
