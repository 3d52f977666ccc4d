#include "doctest.h"
#include "oracles.hpp"

#include "qbsd/core.hpp"
#include "qbsd/error.hpp"

#include <random>

using namespace qbsd;

namespace {

ContextualSubset subset_of(const std::vector<double> &values, std::size_t requested) {
	ContextualSubset s;
	s.requested_size = requested;
	std::int64_t slot = 0;
	for (double v : values) {
		s.samples.push_back({SlotCoord {slot++}, v});
	}
	return s;
}

QbsdConfig config(std::int64_t k = 1) {
	return QbsdConfig {default_weekly_scheme(4, k, Granularity::daily()), 1.0, 4};
}

} // namespace

TEST_CASE("quartiles by linear interpolation") {
	auto q = compute_quartiles(std::vector<double> {1, 2, 3, 4, 5, 6, 7, 8, 9});
	CHECK(q.q1 == 3);
	CHECK(q.q3 == 7);
	CHECK(q.iqr == 4);

	q = compute_quartiles(std::vector<double> {5, 5, 5, 5});
	CHECK(q.q1 == 5);
	CHECK(q.iqr == 0);

	q = compute_quartiles(std::vector<double> {4, 1, 3, 2});
	CHECK(q.q1 == doctest::Approx(1.75).epsilon(1e-15));
	CHECK(q.q3 == doctest::Approx(3.25).epsilon(1e-15));
	CHECK(q.iqr == doctest::Approx(1.5).epsilon(1e-15));

	CHECK_THROWS_AS(compute_quartiles(std::vector<double> {}), EmptyInput);
	CHECK(compute_quartiles(std::vector<double> {42}).iqr == 0);
}

TEST_CASE("quartiles agree with the counting oracle") {
	std::mt19937_64 rng(3);
	for (int trial = 0; trial < 300; ++trial) {
		const auto n = 1 + rng() % 60;
		std::vector<double> v(n);
		for (auto &x : v) {
			x = static_cast<double>(static_cast<int>(rng() % 20)) * 0.5;
		}
		const auto q = compute_quartiles(v);
		CHECK(std::abs(q.q1 - oracle::percentile(v, 0.25)) <= 1e-12);
		CHECK(std::abs(q.q3 - oracle::percentile(v, 0.75)) <= 1e-12);
		CHECK(std::abs(percentile(v, 0.01) - oracle::percentile(v, 0.01)) <= 1e-12);
	}
}

TEST_CASE("forecast is the interquartile mean") {
	auto f = forecast_from_subset(std::vector<double> {1, 2, 3, 4, 5, 6, 7, 8, 9});
	CHECK(f.forecast == 5);
	CHECK_FALSE(f.fallback_used);

	f = forecast_from_subset(std::vector<double> {7, 7, 7, 7, 7});
	CHECK(f.forecast == 7);
	CHECK(f.fallback_used);

	f = forecast_from_subset(std::vector<double> {1, 2, 3, 4});
	CHECK(f.forecast == 2.5);
	CHECK_FALSE(f.fallback_used);
}

TEST_CASE("sorted fast path matches the general path") {
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 200; ++trial) {
		std::vector<double> v(1 + rng() % 40);
		for (auto &x : v) {
			x = static_cast<double>(rng() % 9);
		}
		const auto general = forecast_from_subset(v);
		const auto q = compute_quartiles(v);
		std::sort(v.begin(), v.end());
		const auto fast = forecast_from_sorted(v);
		CHECK(fast.forecast == general.forecast);
		CHECK(fast.fallback_used == general.fallback_used);
		CHECK(fast.q1 == q.q1);
		CHECK(fast.q3 == q.q3);
		CHECK(fast.sample_count == v.size());
	}
}

TEST_CASE("residuals") {
	ForecastOutput f;
	f.forecast = 5;
	f.iqr = 4;
	auto r = compute_residuals(10, f, 1);
	CHECK(r.difference == 5);
	CHECK(r.normalized == 1.25);

	f.iqr = 0;
	r = compute_residuals(10, f, 2);
	CHECK(r.normalized == 2.5);

	r = compute_residuals(5, f, 1);
	CHECK(r == Residuals {0, 0});

	CHECK_THROWS_AS(compute_residuals(1, f, 0), InvalidConstant);
	CHECK_THROWS_AS(compute_residuals(1, f, -1), InvalidConstant);
}

TEST_CASE("contingency constant") {
	CHECK(contingency_constant(std::vector<double>(50, 0.0), 1.0) == 1.0);
	std::vector<double> ramp;
	for (int i = 0; i <= 1000; ++i) {
		ramp.push_back(i);
	}
	CHECK(contingency_constant(ramp, 1e-6) == doctest::Approx(10.0).epsilon(1e-12));
	CHECK(contingency_constant(std::vector<double>(10, -50.0), 1.0) == 50.0);
	CHECK_THROWS_AS(contingency_constant(std::vector<double> {}, 1.0), EmptyInput);
	CHECK_THROWS_AS(contingency_constant(ramp, 0.0), InvalidConstant);
}

TEST_CASE("qbsd_step composes quartiles and forecast") {
	const auto out = qbsd_step(subset_of({9, 1, 8, 2, 7, 3, 6, 4, 5}, 9), config());
	CHECK(out == ForecastOutput {5, 3, 7, 4, 9, false});

	const auto flat = qbsd_step(subset_of({2.5, 2.5, 2.5, 2.5, 2.5}, 9), config());
	CHECK(flat == ForecastOutput {2.5, 2.5, 2.5, 0, 5, true});

	CHECK_THROWS_AS(qbsd_step(subset_of({1, 2}, 9), config()), InsufficientHistory);
}

TEST_CASE("a complete k=0 subset qualifies despite min_samples") {
	const auto cfg = config(0);
	CHECK(cfg.scheme.subset_size() == 3);
	CHECK(qbsd_step(subset_of({4, 4, 4}, 3), cfg).forecast == 4);
	CHECK_THROWS_AS(qbsd_step(subset_of({4, 4}, 3), cfg), InsufficientHistory);
}

TEST_CASE("config validation") {
	auto cfg = config();
	CHECK_NOTHROW(cfg.validate());
	cfg.c = 0;
	CHECK_THROWS_AS(cfg.validate(), InvalidConstant);
	cfg.c = 1;
	cfg.min_samples = 2;
	CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}
