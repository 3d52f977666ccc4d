#include "qbsd/timegrid.hpp"

#include "qbsd/error.hpp"

#include <algorithm>
#include <sstream>

namespace qbsd {

Granularity Granularity::from_interval(std::int64_t interval_seconds) {
	if (interval_seconds <= 0 || kSecondsPerDay % interval_seconds != 0) {
		throw InvalidGranularity("interval of " + std::to_string(interval_seconds) +
		                         " s does not divide a day of 86400 s");
	}
	return Granularity {interval_seconds, kSecondsPerDay / interval_seconds};
}

std::int64_t WindowKind::first_offset() const noexcept {
	switch (shape) {
	case WindowShape::Past:
	case WindowShape::Symmetric:
		return -k;
	case WindowShape::ForwardInclusive:
		return 0;
	}
	return 0;
}

std::int64_t WindowKind::last_offset() const noexcept {
	switch (shape) {
	case WindowShape::Past:
		return -1;
	case WindowShape::Symmetric:
	case WindowShape::ForwardInclusive:
		return k;
	}
	return 0;
}

std::int64_t WindowKind::size() const noexcept {
	switch (shape) {
	case WindowShape::Past:
		return k;
	case WindowShape::Symmetric:
		return 2 * k + 1;
	case WindowShape::ForwardInclusive:
		return k + 1;
	}
	return 0;
}

namespace {

const char *shape_name(WindowShape shape) {
	switch (shape) {
	case WindowShape::Past:
		return "past";
	case WindowShape::Symmetric:
		return "sym";
	case WindowShape::ForwardInclusive:
		return "fwd";
	}
	return "?";
}

} // namespace

SeasonalityScheme::SeasonalityScheme(std::vector<LagSpec> lags) : lags_(std::move(lags)) {
	if (lags_.empty()) {
		throw InvalidScheme("scheme has no lag groups");
	}
	if (lags_.front().lag_slots != 0 || lags_.front().window.shape != WindowShape::Past) {
		throw InvalidScheme("first lag group must be lag 0 with a Past window");
	}
	for (std::size_t i = 0; i < lags_.size(); ++i) {
		const auto &lag = lags_[i];
		if (lag.lag_slots < 0 || lag.window.k < 0) {
			throw InvalidScheme("lag and context period must be non-negative");
		}
		if (i > 0 && lag.lag_slots == 0) {
			throw InvalidScheme("only the first group may use lag 0");
		}
		if (lag.window.size() > 0 && lag.newest_offset() >= 0) {
			throw InvalidScheme("lag group " + std::to_string(i) + " reaches the target slot or later");
		}
	}
	for (std::size_t i = 0; i < lags_.size(); ++i) {
		for (std::size_t j = i + 1; j < lags_.size(); ++j) {
			const auto &a = lags_[i];
			const auto &b = lags_[j];
			if (a.window.size() == 0 || b.window.size() == 0) {
				continue;
			}
			if (a.oldest_offset() <= b.newest_offset() && b.oldest_offset() <= a.newest_offset()) {
				throw InvalidScheme("lag groups " + std::to_string(i) + " and " + std::to_string(j) +
				                    " overlap; reduce the context period");
			}
		}
	}
	for (const auto &lag : lags_) {
		subset_size_ += static_cast<std::size_t>(lag.window.size());
		if (lag.window.size() > 0) {
			history_span_ = std::max(history_span_, -lag.oldest_offset());
		}
	}
}

std::int64_t SeasonalityScheme::max_lag() const noexcept {
	std::int64_t best = 0;
	for (const auto &lag : lags_) {
		best = std::max(best, lag.lag_slots);
	}
	return best;
}

std::int64_t SeasonalityScheme::context_period() const noexcept {
	std::int64_t best = 0;
	for (const auto &lag : lags_) {
		best = std::max(best, lag.window.k);
	}
	return best;
}

std::string SeasonalityScheme::describe() const {
	std::ostringstream os;
	for (std::size_t i = 0; i < lags_.size(); ++i) {
		if (i) {
			os << ',';
		}
		os << lags_[i].lag_slots << ':' << shape_name(lags_[i].window.shape) << '(' << lags_[i].window.k << ')';
	}
	return os.str();
}

SlotCoord align(std::int64_t timestamp_epoch_seconds, const Granularity &g) {
	if (timestamp_epoch_seconds < 0) {
		throw GridMisaligned("timestamp " + std::to_string(timestamp_epoch_seconds) + " precedes the epoch");
	}
	if (timestamp_epoch_seconds % g.interval_seconds != 0) {
		throw GridMisaligned("timestamp " + std::to_string(timestamp_epoch_seconds) +
		                     " is not a multiple of the " + std::to_string(g.interval_seconds) + " s interval");
	}
	return SlotCoord {timestamp_epoch_seconds / g.interval_seconds};
}

std::int64_t to_timestamp(SlotCoord slot, const Granularity &g) noexcept {
	return slot.global_slot * g.interval_seconds;
}

SeasonalityScheme default_weekly_scheme(int n_weeks, std::int64_t k, const Granularity &g) {
	if (n_weeks < 2) {
		throw InvalidScheme("weekly scheme needs at least 2 weeks, got " + std::to_string(n_weeks));
	}
	const auto week = g.slots_per_week();
	std::vector<LagSpec> lags;
	lags.push_back({0, {WindowShape::Past, k}});
	for (int w = 1; w < n_weeks - 1; ++w) {
		lags.push_back({w * week, {WindowShape::Symmetric, k}});
	}
	lags.push_back({(n_weeks - 1) * week, {WindowShape::ForwardInclusive, k}});
	return SeasonalityScheme(std::move(lags));
}

SeasonalityScheme weekly_plus_yearly_scheme(std::int64_t k, const Granularity &g) {
	return SeasonalityScheme({
	    {0, {WindowShape::Past, k}},
	    {g.slots_per_week(), {WindowShape::Symmetric, k}},
	    {52 * g.slots_per_week(), {WindowShape::ForwardInclusive, k}},
	});
}

std::vector<SlotCoord> resolve_subset_slots(SlotCoord t, const SeasonalityScheme &scheme) {
	if (t.global_slot < scheme.history_span()) {
		throw InsufficientSpan("slot " + std::to_string(t.global_slot) + " is closer to the grid origin than the " +
		                       std::to_string(scheme.history_span()) + "-slot scheme span");
	}
	std::vector<SlotCoord> out;
	out.reserve(scheme.subset_size());
	for (const auto &lag : scheme.lags()) {
		const auto anchor = t.global_slot - lag.lag_slots;
		for (auto off = lag.window.first_offset(); off <= lag.window.last_offset(); ++off) {
			out.push_back(SlotCoord {anchor + off});
		}
	}
	return out;
}

} // namespace qbsd
