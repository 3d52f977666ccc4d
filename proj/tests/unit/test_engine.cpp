#include "doctest.h"

#include "qbsd/engine.hpp"

#include <cmath>
#include <random>

using namespace qbsd;

namespace {

const Granularity kG = Granularity::quarter_hourly();
constexpr std::int64_t kDay = 96;
constexpr std::int64_t kWeek = 7 * kDay;
constexpr std::int64_t kStart = 20000 * kDay; // a whole day, far from the epoch

double periodic(std::int64_t slot) {
	const auto s = slot % kWeek;
	return 100.0 + 40.0 * std::sin(2.0 * M_PI * static_cast<double>(s % kDay) / kDay) + (s / kDay >= 5 ? -30.0 : 0.0);
}

QbsdConfig weekly(std::int64_t k) {
	return QbsdConfig {default_weekly_scheme(4, k, kG), 1.0, 4};
}

} // namespace

TEST_CASE("history keeps the newest capacity slots") {
	SlotHistory h(28 * kDay);
	for (std::int64_t s = 0; s < 28 * kDay; ++s) {
		h.insert(SlotCoord {kStart + s}, 1.0);
	}
	CHECK(h.size() == static_cast<std::size_t>(28 * kDay));

	SlotHistory h2(28 * kDay);
	for (std::int64_t s = 0; s < 40 * kDay; ++s) {
		h2.insert(SlotCoord {kStart + s}, static_cast<double>(s));
	}
	CHECK(h2.size() == static_cast<std::size_t>(28 * kDay));
	CHECK_FALSE(h2.contains(SlotCoord {kStart + 12 * kDay - 1}));
	CHECK(h2.value_at(SlotCoord {kStart + 12 * kDay}) == 12.0 * kDay);
	CHECK(h2.is_stale(SlotCoord {kStart}));
	CHECK_THROWS_AS(h2.insert(SlotCoord {kStart}, 1.0), StaleObservation);
}

TEST_CASE("overwrites and erasures") {
	SlotHistory h(10);
	h.insert(SlotCoord {5}, 1.0);
	h.insert(SlotCoord {5}, 2.0);
	CHECK(h.size() == 1);
	CHECK(h.value_at(SlotCoord {5}) == 2.0);
	h.insert(SlotCoord {3}, 4.0); // older but still inside the window
	CHECK(h.size() == 2);
	h.insert(SlotCoord {5}, std::nan(""));
	CHECK(h.size() == 1);
	CHECK_FALSE(h.contains(SlotCoord {5}));
	// A jump far ahead clears everything.
	h.insert(SlotCoord {1000}, 7.0);
	CHECK(h.size() == 1);
	const auto snap = h.snapshot();
	REQUIRE(snap.size() == 1);
	CHECK(snap[0].slot.global_slot == 1000);
}

TEST_CASE("capacity sizing") {
	const auto s = default_weekly_scheme(4, 4, kG);
	CHECK(required_capacity(s) == static_cast<std::size_t>(3 * kWeek + 1));
	CHECK(default_capacity(s, kG) == static_cast<std::size_t>(4 * kWeek));
	CHECK_THROWS_AS(RollingForecaster(weekly(4), kG, 3 * kWeek), InvalidConfig);
	CHECK_NOTHROW(RollingForecaster(weekly(4), kG, 3 * kWeek + 1));
}

TEST_CASE("exact periodic history forecasts the periodic value") {
	RollingForecaster f(weekly(0), kG);
	for (std::int64_t s = kStart; s < kStart + 4 * kWeek; ++s) {
		f.ingest(SlotCoord {s}, periodic(s));
	}
	for (std::int64_t s = kStart + 4 * kWeek; s < kStart + 5 * kWeek; ++s) {
		const auto [res, fo] = f.observe(SlotCoord {s}, periodic(s));
		CHECK(fo.forecast == periodic(s));
		CHECK(fo.iqr == 0.0);
		CHECK(res.difference == 0.0);
	}
}

TEST_CASE("forecast ignores the target's own value") {
	std::mt19937_64 rng(9);
	std::normal_distribution<double> noise(0, 10);
	RollingForecaster f(weekly(4), kG);
	for (std::int64_t s = kStart; s < kStart + 4 * kWeek; ++s) {
		f.ingest(SlotCoord {s}, periodic(s) + noise(rng));
	}
	const SlotCoord t {kStart + 4 * kWeek - 10};
	const auto with = f.forecast_at(t);
	f.ingest(t, 1e9);
	CHECK(f.forecast_at(t) == with);
	f.ingest(t, std::nan(""));
	CHECK(f.forecast_at(t) == with);
}

TEST_CASE("spike residual equals the injection") {
	RollingForecaster f(weekly(0), kG);
	for (std::int64_t s = kStart; s < kStart + 4 * kWeek; ++s) {
		f.ingest(SlotCoord {s}, periodic(s));
	}
	const std::int64_t t = kStart + 4 * kWeek + 40;
	for (std::int64_t s = kStart + 4 * kWeek; s < t; ++s) {
		f.observe(SlotCoord {s}, periodic(s));
	}
	const auto [res, fo] = f.observe(SlotCoord {t}, periodic(t) + 200.0);
	CHECK(res.difference == doctest::Approx(200.0).epsilon(1e-12));
	CHECK(res.normalized == doctest::Approx(200.0).epsilon(1e-12)); // iqr 0, c 1
}

TEST_CASE("constant series gives zero residuals") {
	RollingForecaster f(weekly(2), kG);
	for (std::int64_t s = kStart; s < kStart + 4 * kWeek; ++s) {
		f.ingest(SlotCoord {s}, 3.0);
	}
	const auto [res, fo] = f.observe(SlotCoord {kStart + 4 * kWeek}, 3.0);
	CHECK(res == Residuals {0, 0});
}

TEST_CASE("warmup buffers the observation and reports why") {
	RollingForecaster f(weekly(1), kG);
	CHECK_THROWS_AS(f.observe(SlotCoord {kStart}, 1.0), InsufficientHistory);
	CHECK(f.history().contains(SlotCoord {kStart}));

	const auto r = f.step(SlotCoord {kStart + 1}, 2.0);
	CHECK_FALSE(r.forecast);
	REQUIRE(r.skipped);
	CHECK(*r.skipped == ErrorCode::InsufficientHistory);
	CHECK(f.history().size() == 2);

	RollingForecaster early(weekly(1), kG);
	const auto e = early.step(SlotCoord {5}, 1.0);
	REQUIRE(e.skipped);
	CHECK(*e.skipped == ErrorCode::InsufficientSpan);
}

TEST_CASE("sparse subsets below min_samples are refused") {
	RollingForecaster f(weekly(1), kG);
	const std::int64_t t = kStart + 4 * kWeek;
	f.ingest(SlotCoord {t - kWeek}, 1.0);
	f.ingest(SlotCoord {t - 2 * kWeek}, 1.0);
	f.ingest(SlotCoord {t - 1}, 1.0);
	CHECK_THROWS_AS(f.forecast_at(SlotCoord {t}), InsufficientHistory);
	f.ingest(SlotCoord {t - 3 * kWeek}, 1.0);
	CHECK(f.forecast_at(SlotCoord {t}).sample_count == 4);
}

TEST_CASE("timestamp ingestion checks alignment") {
	RollingForecaster f(weekly(1), kG);
	const std::vector<std::pair<std::int64_t, double>> ok {{kStart * 900, 1.0}, {kStart * 900 + 900, 2.0}};
	f.ingest_timestamps(ok);
	CHECK(f.history().size() == 2);
	const std::vector<std::pair<std::int64_t, double>> bad {{kStart * 900 + 1000, 1.0}};
	CHECK_THROWS_AS(f.ingest_timestamps(bad), GridMisaligned);
}

TEST_CASE("multi-series engine isolates series and parallel matches sequential") {
	auto build = [] {
		MultiSeriesEngine e;
		for (int i = 0; i < 5; ++i) {
			e.add_series("cell-" + std::to_string(i), weekly(2), kG);
		}
		return e;
	};
	std::vector<MultiSeriesEngine::Observation> batch;
	std::mt19937_64 rng(1);
	std::normal_distribution<double> noise(0, 5);
	for (std::int64_t s = kStart; s < kStart + 5 * kWeek; ++s) {
		for (int i = 0; i < 5; ++i) {
			batch.push_back({"cell-" + std::to_string(i), SlotCoord {s}, periodic(s) * (1 + i) + noise(rng)});
		}
	}
	auto seq = build();
	auto par = build();
	const auto a = seq.observe_all(batch, 1);
	const auto b = par.observe_all(batch, 4);
	REQUIRE(a.size() == b.size());
	std::size_t forecasts = 0;
	for (std::size_t i = 0; i < a.size(); ++i) {
		CHECK(a[i].forecast == b[i].forecast);
		forecasts += a[i].forecast ? 1 : 0;
	}
	CHECK(forecasts > 0);

	MultiSeriesEngine e = build();
	CHECK_THROWS_AS(e.add_series("cell-0", weekly(2), kG), InvalidConfig);
	CHECK(e.size() == 5);
	CHECK_THROWS(e.at("missing"));
}
