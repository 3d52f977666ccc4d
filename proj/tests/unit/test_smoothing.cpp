#include "doctest.h"
#include "oracles.hpp"

#include "qbsd/error.hpp"
#include "qbsd/smoothing.hpp"

#include <cmath>
#include <random>

using namespace qbsd;

TEST_CASE("savgol weights match the exact normal-equation solution") {
	for (int window = 3; window <= 11; window += 2) {
		for (int order = 0; order < window && order <= 5; ++order) {
			const auto got = savgol_coefficients(window, order);
			const auto want = oracle::savgol_center_weights(window, order);
			REQUIRE(got.size() == want.size());
			for (std::size_t i = 0; i < got.size(); ++i) {
				CHECK(std::abs(got[i] - want[i].to_double()) <= 1e-12);
			}
		}
	}
}

TEST_CASE("classic savgol tables") {
	const auto w52 = savgol_coefficients(5, 2);
	const double expect[] = {-3, 12, 17, 12, -3};
	for (int i = 0; i < 5; ++i) {
		CHECK(std::abs(w52[i] - expect[i] / 35.0) <= 1e-12);
	}
	for (double w : savgol_coefficients(3, 1)) {
		CHECK(std::abs(w - 1.0 / 3.0) <= 1e-12);
	}
	const auto w54 = savgol_coefficients(5, 4);
	for (int i = 0; i < 5; ++i) {
		CHECK(std::abs(w54[i] - (i == 2 ? 1.0 : 0.0)) <= 1e-12);
	}
	// First derivative of a quadratic fit over 5 points: (-2,-1,0,1,2)/10.
	const auto d1 = savgol_coefficients(5, 2, 1);
	for (int i = 0; i < 5; ++i) {
		CHECK(std::abs(d1[i] - (i - 2) / 10.0) <= 1e-12);
	}
	for (double w : savgol_coefficients(5, 1, 2)) {
		CHECK(w == 0.0);
	}
}

TEST_CASE("invalid windows") {
	CHECK_THROWS_AS(savgol_coefficients(4, 2), InvalidWindow);
	CHECK_THROWS_AS(savgol_coefficients(5, 5), InvalidWindow);
	CHECK_THROWS_AS(savgol_coefficients(1, 0), InvalidWindow);
	CHECK_THROWS_AS(parse_smoother("sg:4:2"), InvalidWindow);
	CHECK_THROWS_AS(parse_smoother("ma:0"), InvalidWindow);
	CHECK_THROWS_AS(parse_smoother("spline"), InvalidWindow);
	CHECK_THROWS_AS(smooth(std::vector<double> {1, 2, 3}, SavitzkyGolaySmoother {5, 2}), SeriesTooShort);
}

TEST_CASE("parse and print smoother specs") {
	CHECK(std::holds_alternative<NoSmoother>(parse_smoother("none")));
	const auto sg = std::get<SavitzkyGolaySmoother>(parse_smoother("sg:11:3"));
	CHECK(sg.window_length == 11);
	CHECK(sg.polyorder == 3);
	CHECK(std::get<MovingAverageSmoother>(parse_smoother("ma:5")).window == 5);
	CHECK(to_string(parse_smoother("sg:7:2")) == "sg:7:2");
}

TEST_CASE("polynomials up to the fit order survive smoothing, edges included") {
	std::mt19937_64 rng(2);
	std::uniform_real_distribution<double> coef(-2, 2);
	for (std::size_t order = 0; order <= 4; ++order) {
		std::vector<double> c(order + 1);
		for (auto &x : c) {
			x = coef(rng);
		}
		std::vector<double> series;
		for (int i = 0; i < 40; ++i) {
			double v = 0;
			for (std::size_t e = order + 1; e-- > 0;) {
				v = v * (i / 10.0) + c[e];
			}
			series.push_back(v);
		}
		const auto out = smooth(series, SavitzkyGolaySmoother {order + 5 + (order % 2), order});
		for (std::size_t i = 0; i < series.size(); ++i) {
			CHECK(std::abs(out[i] - series[i]) <= 1e-9);
		}
	}
}

TEST_CASE("moving average") {
	const std::vector<double> v {1, 2, 3, 4, 5, 6, 7};
	CHECK(smooth(v, MovingAverageSmoother {1}) == v);
	const auto out = smooth(v, MovingAverageSmoother {3});
	CHECK(out[3] == doctest::Approx(4.0));
	const auto flat = smooth(std::vector<double>(9, 2.5), SavitzkyGolaySmoother {5, 2});
	for (double x : flat) {
		CHECK(x == doctest::Approx(2.5).epsilon(1e-14));
	}
}

TEST_CASE("runs separated by gaps are smoothed independently") {
	const double nan = std::nan("");
	const std::vector<double> v {1, 4, 9, 16, 25, nan, 3, 3, nan, 2, 2, 2, 2, 2};
	const auto out = smooth_runs(v, SavitzkyGolaySmoother {5, 2});
	for (std::size_t i = 0; i < 5; ++i) {
		CHECK(out[i] == doctest::Approx(v[i]).epsilon(1e-12));
	}
	CHECK(std::isnan(out[5]));
	CHECK(out[6] == 3);
	CHECK(std::isnan(out[8]));
	CHECK(out[13] == doctest::Approx(2.0));
}

TEST_CASE("streaming smoother equals the batch version") {
	std::mt19937_64 rng(4);
	std::normal_distribution<double> noise(0, 1);
	std::vector<double> v;
	for (int i = 0; i < 300; ++i) {
		v.push_back((i % 37 == 0 || i % 53 == 0) ? std::nan("") : std::sin(i * 0.1) + noise(rng));
	}
	for (const auto &spec : {SmootherSpec {SavitzkyGolaySmoother {11, 3}}, SmootherSpec {MovingAverageSmoother {4}},
	                         SmootherSpec {NoSmoother {}}}) {
		const auto batch = smooth_runs(v, spec);
		StreamingSmoother s(spec);
		std::vector<double> out;
		std::size_t max_pending = 0;
		for (double x : v) {
			s.push(x, out);
			max_pending = std::max(max_pending, s.pending());
		}
		s.flush(out);
		REQUIRE(out.size() == batch.size());
		for (std::size_t i = 0; i < out.size(); ++i) {
			if (std::isnan(batch[i])) {
				CHECK(std::isnan(out[i]));
			} else {
				CHECK(out[i] == doctest::Approx(batch[i]).epsilon(1e-12));
			}
		}
		CHECK(max_pending <= 11);
	}
}
