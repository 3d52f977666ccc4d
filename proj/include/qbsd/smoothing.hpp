#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qbsd {

struct NoSmoother {};
struct SavitzkyGolaySmoother {
	std::size_t window_length = 11;
	std::size_t polyorder = 3;
};
struct MovingAverageSmoother {
	std::size_t window = 1;
};

using SmootherSpec = std::variant<NoSmoother, SavitzkyGolaySmoother, MovingAverageSmoother>;

/// Parses "none", "sg:<window>:<polyorder>" or "ma:<window>".
SmootherSpec parse_smoother(const std::string &text);
std::string to_string(const SmootherSpec &spec);

/// Least-squares polynomial convolution weights centred on the middle of an
/// odd window. derivative = d returns the weights of the d-th derivative at
/// the centre (unit sample spacing).
std::vector<double> savgol_coefficients(std::size_t window_length, std::size_t polyorder, std::size_t derivative = 0);

/// Projection ("hat") matrix of a smoother: row i holds the weights that give
/// the fitted value at window position i. Interior points use the anchor row;
/// the first and last `anchor` / `window - 1 - anchor` points are evaluated on
/// the first and last full windows.
class SmoothingKernel {
public:
	explicit SmoothingKernel(const SmootherSpec &spec);

	std::size_t window() const noexcept {
		return window_;
	}
	std::size_t anchor() const noexcept {
		return anchor_;
	}
	std::span<const double> row(std::size_t i) const noexcept {
		return {hat_.data() + i * window_, window_};
	}

private:
	std::size_t window_ = 1;
	std::size_t anchor_ = 0;
	std::vector<double> hat_;
};

/// Same-length smoothed series. Throws SeriesTooShort when the series is
/// shorter than the window.
std::vector<double> smooth(std::span<const double> series, const SmootherSpec &spec);

/// Smooths every maximal run of non-NaN values independently. NaNs pass
/// through; runs shorter than the window are returned unchanged.
std::vector<double> smooth_runs(std::span<const double> series, const SmootherSpec &spec);

/// Incremental smooth_runs: outputs are produced in input order as soon as the
/// lookahead they need has arrived. Holds at most one window of values.
class StreamingSmoother {
public:
	explicit StreamingSmoother(const SmootherSpec &spec) : kernel_(spec) {
	}

	void push(double value, std::vector<double> &out);
	void flush(std::vector<double> &out);

	std::size_t pending() const noexcept {
		return run_length_ - emitted_;
	}

private:
	void finish_run(std::vector<double> &out);
	double apply(std::size_t row, std::size_t window_start) const;

	SmoothingKernel kernel_;
	std::deque<double> tail_; // last <= window values of the current run
	std::size_t run_length_ = 0;
	std::size_t emitted_ = 0;
};

} // namespace qbsd
