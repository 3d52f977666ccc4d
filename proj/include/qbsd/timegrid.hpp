#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qbsd {

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kDaysPerWeek = 7;

/// Fixed sampling interval (the result output period) of a series. A day is
/// always 86400 s; the interval must divide it exactly.
struct Granularity {
	std::int64_t interval_seconds = kSecondsPerDay;
	std::int64_t slots_per_day = 1;

	static Granularity from_interval(std::int64_t interval_seconds);
	static Granularity daily() {
		return from_interval(kSecondsPerDay);
	}
	static Granularity hourly() {
		return from_interval(3600);
	}
	static Granularity quarter_hourly() {
		return from_interval(900);
	}

	std::int64_t slots_per_week() const noexcept {
		return kDaysPerWeek * slots_per_day;
	}
	std::int64_t days_to_slots(std::int64_t days) const noexcept {
		return days * slots_per_day;
	}

	friend bool operator==(const Granularity &, const Granularity &) = default;
};

/// Position on the slot grid, counted from the Unix epoch.
struct SlotCoord {
	std::int64_t global_slot = 0;

	std::int64_t day_index(const Granularity &g) const noexcept {
		return global_slot / g.slots_per_day;
	}
	std::int64_t slot_of_day(const Granularity &g) const noexcept {
		return global_slot % g.slots_per_day;
	}
	// Monday = 0. The epoch (1970-01-01) was a Thursday.
	std::int64_t day_of_week(const Granularity &g) const noexcept {
		return (day_index(g) + 3) % kDaysPerWeek;
	}

	SlotCoord operator+(std::int64_t n) const noexcept {
		return SlotCoord{global_slot + n};
	}
	SlotCoord operator-(std::int64_t n) const noexcept {
		return SlotCoord{global_slot - n};
	}

	friend auto operator<=>(const SlotCoord &, const SlotCoord &) = default;
};

struct SeriesPoint {
	SlotCoord slot;
	double value = 0.0;

	friend bool operator==(const SeriesPoint &, const SeriesPoint &) = default;
};

enum class WindowShape {
	Past,             // offsets -k .. -1
	Symmetric,        // offsets -k .. +k
	ForwardInclusive, // offsets  0 .. +k
};

struct WindowKind {
	WindowShape shape = WindowShape::Past;
	std::int64_t k = 0;

	std::int64_t first_offset() const noexcept;
	std::int64_t last_offset() const noexcept;
	std::int64_t size() const noexcept;

	friend bool operator==(const WindowKind &, const WindowKind &) = default;
};

/// One group of the contextual subset: the window taken around t - lag_slots.
struct LagSpec {
	std::int64_t lag_slots = 0;
	WindowKind window;

	// Offsets relative to the target slot.
	std::int64_t oldest_offset() const noexcept {
		return window.first_offset() - lag_slots;
	}
	std::int64_t newest_offset() const noexcept {
		return window.last_offset() - lag_slots;
	}

	friend bool operator==(const LagSpec &, const LagSpec &) = default;
};

/// Ordered recipe of lag groups that defines the contextual subset. The first
/// group is always the lag-0 Past window; groups never overlap and never reach
/// the target slot or anything after it.
class SeasonalityScheme {
public:
	explicit SeasonalityScheme(std::vector<LagSpec> lags);

	const std::vector<LagSpec> &lags() const noexcept {
		return lags_;
	}
	std::size_t subset_size() const noexcept {
		return subset_size_;
	}
	std::int64_t max_lag() const noexcept;
	std::int64_t context_period() const noexcept;
	/// Distance from the target back to the oldest slot any group reads.
	std::int64_t history_span() const noexcept {
		return history_span_;
	}
	std::string describe() const;

	friend bool operator==(const SeasonalityScheme &a, const SeasonalityScheme &b) {
		return a.lags_ == b.lags_;
	}

private:
	std::vector<LagSpec> lags_;
	std::size_t subset_size_ = 0;
	std::int64_t history_span_ = 0;
};

SlotCoord align(std::int64_t timestamp_epoch_seconds, const Granularity &g);
std::int64_t to_timestamp(SlotCoord slot, const Granularity &g) noexcept;

/// Lag 0 Past(k), then n_weeks-2 Symmetric(k) weekly lags, then a final
/// ForwardInclusive(k) group n_weeks-1 weeks back.
SeasonalityScheme default_weekly_scheme(int n_weeks, std::int64_t k, const Granularity &g);

/// Lag 0 Past(k), one Symmetric(k) weekly lag, and a ForwardInclusive(k) group
/// 52 weeks (364 days) back.
SeasonalityScheme weekly_plus_yearly_scheme(std::int64_t k, const Granularity &g);

std::vector<SlotCoord> resolve_subset_slots(SlotCoord t, const SeasonalityScheme &scheme);

} // namespace qbsd
