#pragma once

#include "qbsd/core.hpp"
#include "qbsd/error.hpp"
#include "qbsd/timegrid.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qbsd {

/// Fixed-capacity FIFO of slot values. Slot s lives at index s mod capacity;
/// advancing the newest slot clears everything that falls out of
/// (latest - capacity, latest]. Lookups and inserts are O(1) amortized,
/// independent of capacity.
class SlotHistory {
public:
	explicit SlotHistory(std::size_t capacity);

	/// Inserts or overwrites. A NaN value erases the slot. Throws
	/// StaleObservation for slots that already fell out of the window.
	void insert(SlotCoord slot, double value);

	std::optional<double> value_at(SlotCoord slot) const noexcept;
	bool contains(SlotCoord slot) const noexcept {
		return value_at(slot).has_value();
	}
	bool is_stale(SlotCoord slot) const noexcept {
		return has_latest_ && slot.global_slot <= latest_ - static_cast<std::int64_t>(capacity());
	}

	std::size_t size() const noexcept {
		return count_;
	}
	std::size_t capacity() const noexcept {
		return values_.size();
	}
	std::optional<SlotCoord> latest() const noexcept {
		return has_latest_ ? std::optional<SlotCoord>(SlotCoord {latest_}) : std::nullopt;
	}

	/// Present entries in ascending slot order.
	std::vector<SeriesPoint> snapshot() const;
	void clear() noexcept;

private:
	std::size_t index_of(std::int64_t slot) const noexcept;
	bool retained(std::int64_t slot) const noexcept {
		return has_latest_ && slot <= latest_ && slot > latest_ - static_cast<std::int64_t>(capacity());
	}

	std::vector<double> values_;
	std::int64_t latest_ = 0;
	bool has_latest_ = false;
	std::size_t count_ = 0;
};

/// Outcome of one streaming step. When the forecast is unavailable (warmup,
/// missing data) `skipped` carries the reason and the observation is still
/// buffered.
struct StepResult {
	std::optional<ForecastOutput> forecast;
	std::optional<Residuals> residuals;
	std::optional<ErrorCode> skipped;
};

/// Anything that forecasts a slot from its own trailing history and then
/// absorbs the observation.
class StreamingModel {
public:
	virtual ~StreamingModel() = default;

	/// Forecast t, compute residuals against value, then buffer (t, value).
	virtual StepResult step(SlotCoord t, double value) = 0;
	virtual void ingest(SlotCoord t, double value) = 0;
	virtual std::string name() const = 0;
	virtual const SlotHistory &history() const = 0;
};

/// Smallest buffer that still serves every subset slot after the target
/// itself has been buffered.
std::size_t required_capacity(const SeasonalityScheme &scheme) noexcept;

/// required_capacity rounded up to whole weeks (28 days for the 4-week scheme).
std::size_t default_capacity(const SeasonalityScheme &scheme, const Granularity &g) noexcept;

class RollingForecaster final : public StreamingModel {
public:
	/// capacity == 0 selects default_capacity().
	RollingForecaster(QbsdConfig cfg, Granularity g, std::size_t capacity = 0);

	void ingest_history(std::span<const SeriesPoint> batch);
	/// Batch keyed by epoch seconds; throws GridMisaligned.
	void ingest_timestamps(std::span<const std::pair<std::int64_t, double>> batch);
	void ingest(SlotCoord t, double value) override {
		history_.insert(t, value);
	}

	ContextualSubset contextual_subset(SlotCoord t) const;
	ForecastOutput forecast_at(SlotCoord t) const;

	/// Throws InsufficientHistory / InsufficientSpan after buffering the value.
	std::pair<Residuals, ForecastOutput> observe(SlotCoord t, double value);
	StepResult step(SlotCoord t, double value) override;

	std::string name() const override {
		return "qbsd";
	}
	const SlotHistory &history() const override {
		return history_;
	}
	const QbsdConfig &config() const noexcept {
		return cfg_;
	}
	const Granularity &granularity() const noexcept {
		return g_;
	}

private:
	void gather(SlotCoord t) const;

	QbsdConfig cfg_;
	Granularity g_;
	SlotHistory history_;
	mutable std::vector<double> scratch_;
};

/// Independent forecasters keyed by an opaque series id.
class MultiSeriesEngine {
public:
	RollingForecaster &add_series(const std::string &id, QbsdConfig cfg, Granularity g, std::size_t capacity = 0);

	bool contains(const std::string &id) const {
		return series_.count(id) != 0;
	}
	RollingForecaster &at(const std::string &id);
	const RollingForecaster &at(const std::string &id) const;
	std::size_t size() const noexcept {
		return series_.size();
	}
	std::vector<std::string> ids() const;

	StepResult observe(const std::string &id, SlotCoord t, double value);

	struct Observation {
		std::string series_id;
		SlotCoord slot;
		double value = 0.0;
	};

	/// Steps every observation; per-series order is preserved and distinct
	/// series are spread over up to `threads` workers. Results align with the
	/// input.
	std::vector<StepResult> observe_all(std::span<const Observation> batch, unsigned threads = 1);

private:
	std::map<std::string, RollingForecaster> series_;
};

} // namespace qbsd
