#include "qbsd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

namespace qbsd {

namespace {

constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

} // namespace

SlotHistory::SlotHistory(std::size_t capacity) : values_(capacity, kAbsent) {
	if (capacity == 0) {
		throw InvalidConfig("history capacity must be positive");
	}
}

std::size_t SlotHistory::index_of(std::int64_t slot) const noexcept {
	const auto cap = static_cast<std::int64_t>(values_.size());
	return static_cast<std::size_t>(((slot % cap) + cap) % cap);
}

void SlotHistory::insert(SlotCoord slot, double value) {
	const auto s = slot.global_slot;
	if (!has_latest_) {
		has_latest_ = true;
		latest_ = s;
	} else if (s > latest_) {
		const auto cap = static_cast<std::int64_t>(values_.size());
		if (s - latest_ >= cap) {
			std::fill(values_.begin(), values_.end(), kAbsent);
			count_ = 0;
		} else {
			for (auto evict = latest_ + 1; evict <= s; ++evict) {
				auto &cell = values_[index_of(evict)];
				if (!std::isnan(cell)) {
					cell = kAbsent;
					--count_;
				}
			}
		}
		latest_ = s;
	} else if (is_stale(slot)) {
		throw StaleObservation("slot " + std::to_string(s) + " is older than the retained window ending at " +
		                       std::to_string(latest_));
	}

	auto &cell = values_[index_of(s)];
	const bool was_present = !std::isnan(cell);
	const bool now_present = !std::isnan(value);
	cell = value;
	if (now_present && !was_present) {
		++count_;
	} else if (!now_present && was_present) {
		--count_;
	}
}

std::optional<double> SlotHistory::value_at(SlotCoord slot) const noexcept {
	if (!retained(slot.global_slot)) {
		return std::nullopt;
	}
	const double v = values_[index_of(slot.global_slot)];
	if (std::isnan(v)) {
		return std::nullopt;
	}
	return v;
}

std::vector<SeriesPoint> SlotHistory::snapshot() const {
	std::vector<SeriesPoint> out;
	if (!has_latest_) {
		return out;
	}
	out.reserve(count_);
	const auto cap = static_cast<std::int64_t>(values_.size());
	for (auto s = std::max<std::int64_t>(latest_ - cap + 1, 0); s <= latest_; ++s) {
		const double v = values_[index_of(s)];
		if (!std::isnan(v)) {
			out.push_back({SlotCoord {s}, v});
		}
	}
	return out;
}

void SlotHistory::clear() noexcept {
	std::fill(values_.begin(), values_.end(), kAbsent);
	has_latest_ = false;
	latest_ = 0;
	count_ = 0;
}

std::size_t required_capacity(const SeasonalityScheme &scheme) noexcept {
	return static_cast<std::size_t>(scheme.history_span()) + 1;
}

std::size_t default_capacity(const SeasonalityScheme &scheme, const Granularity &g) noexcept {
	const auto week = static_cast<std::size_t>(g.slots_per_week());
	const auto need = required_capacity(scheme);
	return (need + week - 1) / week * week;
}

RollingForecaster::RollingForecaster(QbsdConfig cfg, Granularity g, std::size_t capacity)
    : cfg_(std::move(cfg)), g_(g), history_(capacity == 0 ? default_capacity(cfg_.scheme, g) : capacity) {
	cfg_.validate();
	if (history_.capacity() < required_capacity(cfg_.scheme)) {
		throw InvalidConfig("history capacity " + std::to_string(history_.capacity()) +
		                    " is shorter than the scheme needs (" +
		                    std::to_string(required_capacity(cfg_.scheme)) + " slots)");
	}
	scratch_.reserve(cfg_.scheme.subset_size());
}

void RollingForecaster::ingest_history(std::span<const SeriesPoint> batch) {
	std::vector<SeriesPoint> ordered(batch.begin(), batch.end());
	std::stable_sort(ordered.begin(), ordered.end(),
	                 [](const SeriesPoint &a, const SeriesPoint &b) { return a.slot < b.slot; });
	for (const auto &p : ordered) {
		history_.insert(p.slot, p.value);
	}
}

void RollingForecaster::ingest_timestamps(std::span<const std::pair<std::int64_t, double>> batch) {
	std::vector<SeriesPoint> points;
	points.reserve(batch.size());
	for (const auto &[ts, v] : batch) {
		points.push_back({align(ts, g_), v});
	}
	ingest_history(points);
}

void RollingForecaster::gather(SlotCoord t) const {
	if (t.global_slot < cfg_.scheme.history_span()) {
		throw InsufficientSpan("slot " + std::to_string(t.global_slot) + " is closer to the grid origin than the " +
		                       std::to_string(cfg_.scheme.history_span()) + "-slot scheme span");
	}
	scratch_.clear();
	for (const auto &lag : cfg_.scheme.lags()) {
		const auto anchor = t.global_slot - lag.lag_slots;
		for (auto off = lag.window.first_offset(); off <= lag.window.last_offset(); ++off) {
			if (auto v = history_.value_at(SlotCoord {anchor + off})) {
				scratch_.push_back(*v);
			}
		}
	}
}

ContextualSubset RollingForecaster::contextual_subset(SlotCoord t) const {
	ContextualSubset subset;
	subset.requested_size = cfg_.scheme.subset_size();
	for (const auto slot : resolve_subset_slots(t, cfg_.scheme)) {
		if (auto v = history_.value_at(slot)) {
			subset.samples.push_back({slot, *v});
		}
	}
	return subset;
}

ForecastOutput RollingForecaster::forecast_at(SlotCoord t) const {
	gather(t);
	if (scratch_.size() < cfg_.required_samples()) {
		throw InsufficientHistory("only " + std::to_string(scratch_.size()) + " of " +
		                          std::to_string(cfg_.scheme.subset_size()) + " subset samples present at slot " +
		                          std::to_string(t.global_slot) + ", need " + std::to_string(cfg_.required_samples()));
	}
	std::sort(scratch_.begin(), scratch_.end());
	return forecast_from_sorted(scratch_);
}

StepResult RollingForecaster::step(SlotCoord t, double value) {
	if (history_.is_stale(t)) {
		throw StaleObservation("slot " + std::to_string(t.global_slot) + " arrived after it left the window");
	}
	StepResult result;
	try {
		const auto fo = forecast_at(t);
		result.forecast = fo;
		if (!std::isnan(value)) {
			result.residuals = compute_residuals(value, fo, cfg_.c);
		}
	} catch (const Error &e) {
		if (e.code() != ErrorCode::InsufficientHistory && e.code() != ErrorCode::InsufficientSpan) {
			throw;
		}
		result.skipped = e.code();
	}
	history_.insert(t, value);
	return result;
}

std::pair<Residuals, ForecastOutput> RollingForecaster::observe(SlotCoord t, double value) {
	if (history_.is_stale(t)) {
		throw StaleObservation("slot " + std::to_string(t.global_slot) + " arrived after it left the window");
	}
	ForecastOutput fo;
	try {
		fo = forecast_at(t);
	} catch (const Error &) {
		history_.insert(t, value);
		throw;
	}
	const auto residuals = compute_residuals(value, fo, cfg_.c);
	history_.insert(t, value);
	return {residuals, fo};
}

RollingForecaster &MultiSeriesEngine::add_series(const std::string &id, QbsdConfig cfg, Granularity g,
                                                 std::size_t capacity) {
	if (contains(id)) {
		throw InvalidConfig("series '" + id + "' already registered");
	}
	auto [it, _] = series_.emplace(id, RollingForecaster(std::move(cfg), g, capacity));
	return it->second;
}

RollingForecaster &MultiSeriesEngine::at(const std::string &id) {
	auto it = series_.find(id);
	if (it == series_.end()) {
		throw InvalidConfig("unknown series '" + id + "'");
	}
	return it->second;
}

const RollingForecaster &MultiSeriesEngine::at(const std::string &id) const {
	auto it = series_.find(id);
	if (it == series_.end()) {
		throw InvalidConfig("unknown series '" + id + "'");
	}
	return it->second;
}

std::vector<std::string> MultiSeriesEngine::ids() const {
	std::vector<std::string> out;
	out.reserve(series_.size());
	for (const auto &[id, _] : series_) {
		out.push_back(id);
	}
	return out;
}

StepResult MultiSeriesEngine::observe(const std::string &id, SlotCoord t, double value) {
	return at(id).step(t, value);
}

std::vector<StepResult> MultiSeriesEngine::observe_all(std::span<const Observation> batch, unsigned threads) {
	// Bucket observation indices per series; each bucket is replayed in order by
	// exactly one worker, so no forecaster is shared between threads.
	std::unordered_map<std::string, std::size_t> bucket_of;
	std::vector<std::pair<RollingForecaster *, std::vector<std::size_t>>> buckets;
	for (std::size_t i = 0; i < batch.size(); ++i) {
		auto [it, inserted] = bucket_of.emplace(batch[i].series_id, buckets.size());
		if (inserted) {
			buckets.push_back({&at(batch[i].series_id), {}});
		}
		buckets[it->second].second.push_back(i);
	}

	std::vector<StepResult> results(batch.size());
	const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(buckets.size())));
	auto run = [&](unsigned worker, std::exception_ptr &error) {
		try {
			for (std::size_t b = worker; b < buckets.size(); b += workers) {
				auto &[forecaster, indices] = buckets[b];
				for (const auto i : indices) {
					results[i] = forecaster->step(batch[i].slot, batch[i].value);
				}
			}
		} catch (...) {
			error = std::current_exception();
		}
	};

	std::vector<std::exception_ptr> errors(workers);
	std::vector<std::thread> pool;
	for (unsigned w = 1; w < workers; ++w) {
		pool.emplace_back(run, w, std::ref(errors[w]));
	}
	run(0, errors[0]);
	for (auto &th : pool) {
		th.join();
	}
	for (const auto &e : errors) {
		if (e) {
			std::rethrow_exception(e);
		}
	}
	return results;
}

} // namespace qbsd
