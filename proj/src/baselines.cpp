#include "qbsd/baselines.hpp"

#include "qbsd/error.hpp"

#include <cmath>
#include <limits>

namespace qbsd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
	using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double lagged(const SlotHistory &history, SlotCoord t, std::int64_t lag) {
	if (auto v = history.value_at(t - lag)) {
		return *v;
	}
	throw InsufficientHistory("no value " + std::to_string(lag) + " slots before slot " +
	                          std::to_string(t.global_slot));
}

} // namespace

std::int64_t default_season_slots(const Granularity &g) noexcept {
	return g.slots_per_week();
}

std::string to_string(const BaselineSpec &spec) {
	return std::visit(overloaded {
	                      [](const SeasonalNaive &s) { return "seasonal-naive(" + std::to_string(s.season_slots) + ")"; },
	                      [](const Persistence &) { return std::string("persistence"); },
	                      [](const MovingAverage &m) { return "moving-average(" + std::to_string(m.window_slots) + ")"; },
	                  },
	                  spec);
}

void validate(const BaselineSpec &spec) {
	std::visit(overloaded {
	               [](const SeasonalNaive &s) {
		               if (s.season_slots < 1) {
			               throw InvalidConfig("season_slots must be at least 1");
		               }
	               },
	               [](const Persistence &) {},
	               [](const MovingAverage &m) {
		               if (m.window_slots < 1) {
			               throw InvalidConfig("window_slots must be at least 1");
		               }
	               },
	           },
	           spec);
}

std::int64_t lookback(const BaselineSpec &spec) noexcept {
	return std::visit(overloaded {
	                      [](const SeasonalNaive &s) { return s.season_slots; },
	                      [](const Persistence &) { return std::int64_t {1}; },
	                      [](const MovingAverage &m) { return m.window_slots; },
	                  },
	                  spec);
}

double baseline_forecast(const SlotHistory &history, SlotCoord t, const BaselineSpec &spec) {
	return std::visit(overloaded {
	                      [&](const SeasonalNaive &s) { return lagged(history, t, s.season_slots); },
	                      [&](const Persistence &) { return lagged(history, t, 1); },
	                      [&](const MovingAverage &m) {
		                      double sum = 0.0;
		                      std::int64_t n = 0;
		                      for (std::int64_t lag = 1; lag <= m.window_slots; ++lag) {
			                      if (auto v = history.value_at(t - lag)) {
				                      sum += *v;
				                      ++n;
			                      }
		                      }
		                      if (n == 0) {
			                      throw InsufficientHistory("no values in the " + std::to_string(m.window_slots) +
			                                                " slots before slot " + std::to_string(t.global_slot));
		                      }
		                      return sum / static_cast<double>(n);
	                      },
	                  },
	                  spec);
}

BaselineForecaster::BaselineForecaster(BaselineSpec spec, double c, std::size_t capacity)
    : spec_(spec), c_(c), history_(capacity) {
	validate(spec_);
	if (!(c_ > 0.0)) {
		throw InvalidConstant("contingency constant must be positive");
	}
	if (history_.capacity() < static_cast<std::size_t>(lookback(spec_)) + 1) {
		throw InvalidConfig("history capacity is shorter than the baseline lookback");
	}
}

StepResult BaselineForecaster::step(SlotCoord t, double value) {
	if (history_.is_stale(t)) {
		throw StaleObservation("slot " + std::to_string(t.global_slot) + " arrived after it left the window");
	}
	StepResult result;
	try {
		constexpr double nan = std::numeric_limits<double>::quiet_NaN();
		const double f = baseline_forecast(history_, t, spec_);
		result.forecast = ForecastOutput {f, nan, nan, nan, 0, false};
		if (!std::isnan(value)) {
			const double diff = value - f;
			result.residuals = Residuals {diff, diff / c_};
		}
	} catch (const InsufficientHistory &) {
		result.skipped = ErrorCode::InsufficientHistory;
	}
	history_.insert(t, value);
	return result;
}

} // namespace qbsd
