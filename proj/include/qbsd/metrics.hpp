#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace qbsd {

struct MetricsReport {
	double mae = 0.0;
	double mse = 0.0;
	double rmse = 0.0;
	double mape = 0.0; // percent; NaN when every actual is zero
	double r2 = 0.0;   // NaN only from evaluate_lenient on constant actuals
	std::size_t n = 0;
	std::size_t mape_excluded_count = 0; // points with a zero actual
};

/// MAE, MSE, RMSE, MAPE and R^2 over paired points. MAPE averages
/// |y - yhat| / |y| * 100 over non-zero actuals. Throws EmptyInput,
/// SizeMismatch, and DegenerateVariance when all actuals are identical.
MetricsReport evaluate(std::span<const double> actual, std::span<const double> predicted);

/// As evaluate, but reports r2 = NaN instead of throwing on constant actuals.
MetricsReport evaluate_lenient(std::span<const double> actual, std::span<const double> predicted);

enum class Alternative { Less, Greater, TwoSided };
enum class WilcoxonMethod { Auto, Exact, Normal };

Alternative parse_alternative(const std::string &text);

inline constexpr std::size_t kWilcoxonMinPairs = 5;
inline constexpr std::size_t kWilcoxonExactMaxPairs = 12;

struct WilcoxonResult {
	double statistic = 0.0; // W+, sum of ranks of positive differences
	double p_value = 1.0;
	std::size_t n = 0; // pairs left after dropping zero differences
	bool exact = false;
};

/// Paired Wilcoxon signed-rank test on a - b. "greater" means a tends to
/// exceed b. Zero differences are dropped, tied |d| share average ranks.
/// Auto picks exact enumeration for n <= 12 and the tie- and
/// continuity-corrected normal approximation above. Throws TooFewPairs when
/// fewer than 5 non-zero differences remain.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> errors_a, std::span<const double> errors_b,
                                    Alternative alternative, WilcoxonMethod method = WilcoxonMethod::Auto);

} // namespace qbsd
