#pragma once

// Slow, direct reference implementations used to check the library. None of
// them share code with it.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

/// k-th smallest value (0-based) found by counting, without sorting.
inline double order_statistic(const std::vector<double> &v, std::size_t k) {
	for (double candidate : v) {
		std::size_t less = 0;
		std::size_t equal = 0;
		for (double x : v) {
			less += x < candidate ? 1 : 0;
			equal += x == candidate ? 1 : 0;
		}
		if (less <= k && k < less + equal) {
			return candidate;
		}
	}
	throw std::logic_error("order statistic out of range");
}

/// Linear interpolation between the order statistics around p * (n - 1).
inline double percentile(const std::vector<double> &v, double p) {
	const double h = p * static_cast<double>(v.size() - 1);
	const auto lo = static_cast<std::size_t>(std::floor(h));
	const double lo_value = order_statistic(v, lo);
	if (lo + 1 >= v.size()) {
		return lo_value;
	}
	return lo_value + (h - static_cast<double>(lo)) * (order_statistic(v, lo + 1) - lo_value);
}

/// Exact rational number over 128-bit integers.
struct Fraction {
	__int128 num = 0;
	__int128 den = 1;

	Fraction() = default;
	Fraction(__int128 n, __int128 d = 1) : num(n), den(d) {
		normalize();
	}
	void normalize() {
		if (den < 0) {
			num = -num;
			den = -den;
		}
		__int128 a = num < 0 ? -num : num;
		__int128 b = den;
		while (b != 0) {
			const auto t = a % b;
			a = b;
			b = t;
		}
		if (a > 1) {
			num /= a;
			den /= a;
		}
	}
	friend Fraction operator+(Fraction a, Fraction b) {
		return {a.num * b.den + b.num * a.den, a.den * b.den};
	}
	friend Fraction operator-(Fraction a, Fraction b) {
		return {a.num * b.den - b.num * a.den, a.den * b.den};
	}
	friend Fraction operator*(Fraction a, Fraction b) {
		return {a.num * b.num, a.den * b.den};
	}
	friend Fraction operator/(Fraction a, Fraction b) {
		return {a.num * b.den, a.den * b.num};
	}
	double to_double() const {
		return static_cast<double>(num) / static_cast<double>(den);
	}
};

/// Least-squares smoothing weights for the centre of an odd window, from the
/// normal equations (A^T A) beta = A^T y solved in exact arithmetic. The
/// weight of sample j is the fitted constant term's coefficient on y_j.
inline std::vector<Fraction> savgol_center_weights(int window, int order) {
	const int half = window / 2;
	const int m = order + 1;
	std::vector<std::vector<Fraction>> ata(m, std::vector<Fraction>(m));
	for (int r = 0; r < m; ++r) {
		for (int c = 0; c < m; ++c) {
			__int128 s = 0;
			for (int x = -half; x <= half; ++x) {
				__int128 p = 1;
				for (int e = 0; e < r + c; ++e) {
					p *= x;
				}
				s += p;
			}
			ata[r][c] = Fraction(s);
		}
	}
	// Invert A^T A by Gauss-Jordan; the first row of the inverse maps A^T y to
	// the constant term.
	std::vector<std::vector<Fraction>> inv(m, std::vector<Fraction>(m));
	for (int i = 0; i < m; ++i) {
		inv[i][i] = Fraction(1);
	}
	for (int col = 0; col < m; ++col) {
		int pivot = col;
		while (ata[pivot][col].num == 0) {
			++pivot;
		}
		std::swap(ata[pivot], ata[col]);
		std::swap(inv[pivot], inv[col]);
		const auto d = ata[col][col];
		for (int c = 0; c < m; ++c) {
			ata[col][c] = ata[col][c] / d;
			inv[col][c] = inv[col][c] / d;
		}
		for (int r = 0; r < m; ++r) {
			if (r != col && ata[r][col].num != 0) {
				const auto f = ata[r][col];
				for (int c = 0; c < m; ++c) {
					ata[r][c] = ata[r][c] - f * ata[col][c];
					inv[r][c] = inv[r][c] - f * inv[col][c];
				}
			}
		}
	}
	std::vector<Fraction> w;
	for (int x = -half; x <= half; ++x) {
		Fraction s;
		__int128 p = 1;
		for (int e = 0; e < m; ++e) {
			s = s + inv[0][e] * Fraction(p);
			p *= x;
		}
		w.push_back(s);
	}
	return w;
}

/// One-sided p-value P(W+ >= observed) by enumerating every sign assignment
/// of the given ranks (ranks may be half-integers, so they are passed doubled).
inline double wilcoxon_upper_p(const std::vector<int> &doubled_ranks, int observed_doubled) {
	const auto n = doubled_ranks.size();
	std::uint64_t hits = 0;
	const std::uint64_t total = std::uint64_t {1} << n;
	for (std::uint64_t mask = 0; mask < total; ++mask) {
		int w = 0;
		for (std::size_t i = 0; i < n; ++i) {
			if (mask & (std::uint64_t {1} << i)) {
				w += doubled_ranks[i];
			}
		}
		hits += w >= observed_doubled ? 1 : 0;
	}
	return static_cast<double>(hits) / static_cast<double>(total);
}

struct Metrics {
	double mae = 0, mse = 0, rmse = 0, mape = 0, r2 = 0;
};

/// Textbook formulas with plain summation.
inline Metrics metrics(const std::vector<double> &y, const std::vector<double> &yhat) {
	Metrics m;
	double abs_sum = 0, sq_sum = 0, pct_sum = 0, mean = 0;
	std::size_t pct_n = 0;
	for (std::size_t i = 0; i < y.size(); ++i) {
		abs_sum += std::fabs(y[i] - yhat[i]);
		sq_sum += (y[i] - yhat[i]) * (y[i] - yhat[i]);
		if (y[i] != 0) {
			pct_sum += std::fabs((y[i] - yhat[i]) / y[i]);
			++pct_n;
		}
		mean += y[i];
	}
	const double n = static_cast<double>(y.size());
	mean /= n;
	double ss_tot = 0;
	for (double v : y) {
		ss_tot += (v - mean) * (v - mean);
	}
	m.mae = abs_sum / n;
	m.mse = sq_sum / n;
	m.rmse = std::sqrt(m.mse);
	m.mape = 100.0 * pct_sum / static_cast<double>(pct_n);
	m.r2 = 1.0 - sq_sum / ss_tot;
	return m;
}

/// Subset slots of the 4-week scheme written out from its definition: the k
/// slots before t, k slots either side of t-S and t-2S, and t-3S..t-3S+k.
inline std::vector<std::int64_t> weekly4_slots(std::int64_t t, std::int64_t k, std::int64_t week) {
	std::vector<std::int64_t> out;
	for (std::int64_t s = t - k; s < t; ++s) {
		out.push_back(s);
	}
	for (int w = 1; w <= 2; ++w) {
		for (std::int64_t s = t - w * week - k; s <= t - w * week + k; ++s) {
			out.push_back(s);
		}
	}
	for (std::int64_t s = t - 3 * week; s <= t - 3 * week + k; ++s) {
		out.push_back(s);
	}
	return out;
}

} // namespace oracle
