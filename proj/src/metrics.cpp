#include "qbsd/metrics.hpp"

#include "qbsd/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace qbsd {

namespace {

void check_pairs(std::span<const double> actual, std::span<const double> predicted) {
	if (actual.size() != predicted.size()) {
		throw SizeMismatch("actual has " + std::to_string(actual.size()) + " points, predicted has " +
		                   std::to_string(predicted.size()));
	}
	if (actual.empty()) {
		throw EmptyInput("no evaluation pairs");
	}
}

MetricsReport evaluate_impl(std::span<const double> actual, std::span<const double> predicted, bool strict_r2) {
	check_pairs(actual, predicted);
	const auto n = actual.size();
	const double nd = static_cast<double>(n);

	double abs_sum = 0.0;
	double sq_sum = 0.0;
	double ape_sum = 0.0;
	std::size_t ape_n = 0;
	double y_sum = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		const double e = actual[i] - predicted[i];
		abs_sum += std::abs(e);
		sq_sum += e * e;
		y_sum += actual[i];
		if (actual[i] != 0.0) {
			ape_sum += std::abs(e / actual[i]);
			++ape_n;
		}
	}
	const double y_mean = y_sum / nd;
	double ss_tot = 0.0;
	for (const double y : actual) {
		ss_tot += (y - y_mean) * (y - y_mean);
	}

	MetricsReport r;
	r.n = n;
	r.mae = abs_sum / nd;
	r.mse = sq_sum / nd;
	r.rmse = std::sqrt(r.mse);
	r.mape_excluded_count = n - ape_n;
	r.mape = ape_n ? ape_sum / static_cast<double>(ape_n) * 100.0 : std::numeric_limits<double>::quiet_NaN();
	if (ss_tot == 0.0) {
		if (strict_r2) {
			throw DegenerateVariance("R^2 is undefined when every actual value is identical");
		}
		r.r2 = std::numeric_limits<double>::quiet_NaN();
	} else {
		r.r2 = 1.0 - sq_sum / ss_tot;
	}
	return r;
}

double normal_cdf(double z) {
	return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_sf(double z) {
	return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace

MetricsReport evaluate(std::span<const double> actual, std::span<const double> predicted) {
	return evaluate_impl(actual, predicted, true);
}

MetricsReport evaluate_lenient(std::span<const double> actual, std::span<const double> predicted) {
	return evaluate_impl(actual, predicted, false);
}

Alternative parse_alternative(const std::string &text) {
	if (text == "less") {
		return Alternative::Less;
	}
	if (text == "greater") {
		return Alternative::Greater;
	}
	if (text == "two-sided" || text == "two_sided") {
		return Alternative::TwoSided;
	}
	throw InvalidConfig("unknown alternative '" + text + "' (expected less, greater or two-sided)");
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> errors_a, std::span<const double> errors_b,
                                    Alternative alternative, WilcoxonMethod method) {
	if (errors_a.size() != errors_b.size()) {
		throw SizeMismatch("paired samples differ in length");
	}
	std::vector<double> d;
	d.reserve(errors_a.size());
	for (std::size_t i = 0; i < errors_a.size(); ++i) {
		const double diff = errors_a[i] - errors_b[i];
		if (diff != 0.0) {
			d.push_back(diff);
		}
	}
	const auto n = d.size();
	if (n < kWilcoxonMinPairs) {
		throw TooFewPairs(std::to_string(n) + " non-zero differences, need at least " +
		                  std::to_string(kWilcoxonMinPairs));
	}

	// Doubled average ranks keep tied ranks integral.
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
	std::vector<std::int64_t> rank2(n);
	double tie_term = 0.0;
	for (std::size_t i = 0; i < n;) {
		auto j = i;
		while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
			++j;
		}
		const auto r2 = static_cast<std::int64_t>(i + 1 + j + 1); // 2 * average of ranks i+1..j+1
		for (auto m = i; m <= j; ++m) {
			rank2[order[m]] = r2;
		}
		const double t = static_cast<double>(j - i + 1);
		tie_term += t * t * t - t;
		i = j + 1;
	}

	std::int64_t w_plus2 = 0;
	for (std::size_t i = 0; i < n; ++i) {
		if (d[i] > 0) {
			w_plus2 += rank2[i];
		}
	}

	WilcoxonResult res;
	res.n = n;
	res.statistic = static_cast<double>(w_plus2) / 2.0;
	res.exact = method == WilcoxonMethod::Exact || (method == WilcoxonMethod::Auto && n <= kWilcoxonExactMaxPairs);

	if (res.exact) {
		if (n > 24) {
			throw InvalidConfig("exact Wilcoxon enumeration is limited to 24 pairs");
		}
		// Null distribution of doubled W+ over all 2^n sign assignments.
		const std::int64_t total2 = std::accumulate(rank2.begin(), rank2.end(), std::int64_t {0});
		std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
		count[0] = 1.0;
		std::int64_t reach = 0;
		for (const auto r : rank2) {
			for (auto s = reach; s >= 0; --s) {
				count[static_cast<std::size_t>(s + r)] += count[static_cast<std::size_t>(s)];
			}
			reach += r;
		}
		const double denom = std::ldexp(1.0, static_cast<int>(n));
		double le = 0.0;
		double ge = 0.0;
		for (std::int64_t s = 0; s <= total2; ++s) {
			if (s <= w_plus2) {
				le += count[static_cast<std::size_t>(s)];
			}
			if (s >= w_plus2) {
				ge += count[static_cast<std::size_t>(s)];
			}
		}
		const double p_le = le / denom;
		const double p_ge = ge / denom;
		switch (alternative) {
		case Alternative::Less:
			res.p_value = p_le;
			break;
		case Alternative::Greater:
			res.p_value = p_ge;
			break;
		case Alternative::TwoSided:
			res.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge));
			break;
		}
		return res;
	}

	const double nd = static_cast<double>(n);
	const double mean = nd * (nd + 1.0) / 4.0;
	const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
	const double sd = std::sqrt(var);
	const double w = res.statistic;
	if (sd == 0.0) {
		res.p_value = 1.0;
		return res;
	}
	switch (alternative) {
	case Alternative::Greater:
		res.p_value = normal_sf((w - mean - 0.5) / sd);
		break;
	case Alternative::Less:
		res.p_value = normal_cdf((w - mean + 0.5) / sd);
		break;
	case Alternative::TwoSided: {
		const double z = (std::abs(w - mean) - 0.5) / sd;
		res.p_value = std::min(1.0, 2.0 * normal_sf(z));
		break;
	}
	}
	return res;
}

} // namespace qbsd
