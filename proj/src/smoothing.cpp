#include "qbsd/smoothing.hpp"

#include "qbsd/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

namespace qbsd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
	using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct PolyFit {
	Eigen::MatrixXd design; // window x (order+1), columns are powers of (i - anchor)
	Eigen::MatrixXd pinv;   // (order+1) x window
};

PolyFit fit_operator(std::size_t window, std::size_t anchor, std::size_t order) {
	const auto rows = static_cast<Eigen::Index>(window);
	const auto cols = static_cast<Eigen::Index>(order + 1);
	Eigen::MatrixXd a(rows, cols);
	for (Eigen::Index i = 0; i < rows; ++i) {
		const double x = static_cast<double>(i) - static_cast<double>(anchor);
		double p = 1.0;
		for (Eigen::Index j = 0; j < cols; ++j) {
			a(i, j) = p;
			p *= x;
		}
	}
	// pinv = R^{-1} Q^T from a thin Householder QR; A has full column rank
	// because order < window.
	Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
	const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
	const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(cols, cols).triangularView<Eigen::Upper>();
	Eigen::MatrixXd pinv = r.triangularView<Eigen::Upper>().solve(q.transpose());
	return {std::move(a), std::move(pinv)};
}

void check_savgol(std::size_t window_length, std::size_t polyorder) {
	if (window_length < 3 || window_length % 2 == 0) {
		throw InvalidWindow("Savitzky-Golay window must be odd and at least 3, got " + std::to_string(window_length));
	}
	if (polyorder >= window_length) {
		throw InvalidWindow("polyorder " + std::to_string(polyorder) + " must be below the window length " +
		                    std::to_string(window_length));
	}
}

std::size_t parse_size(const std::string &field, const std::string &whole) {
	std::size_t used = 0;
	unsigned long v = 0;
	try {
		v = std::stoul(field, &used);
	} catch (const std::exception &) {
		used = 0;
	}
	if (used == 0 || used != field.size()) {
		throw InvalidWindow("cannot parse smoother '" + whole + "'");
	}
	return static_cast<std::size_t>(v);
}

} // namespace

SmootherSpec parse_smoother(const std::string &text) {
	std::vector<std::string> parts;
	std::stringstream ss(text);
	for (std::string item; std::getline(ss, item, ':');) {
		parts.push_back(item);
	}
	if (parts.empty() || parts[0] == "none") {
		if (parts.size() > 1) {
			throw InvalidWindow("'none' smoother takes no parameters");
		}
		return NoSmoother {};
	}
	if (parts[0] == "sg" && parts.size() == 3) {
		SavitzkyGolaySmoother sg {parse_size(parts[1], text), parse_size(parts[2], text)};
		check_savgol(sg.window_length, sg.polyorder);
		return sg;
	}
	if (parts[0] == "ma" && parts.size() == 2) {
		MovingAverageSmoother ma {parse_size(parts[1], text)};
		if (ma.window < 1) {
			throw InvalidWindow("moving-average window must be at least 1");
		}
		return ma;
	}
	throw InvalidWindow("unknown smoother '" + text + "' (expected none, sg:W:P or ma:W)");
}

std::string to_string(const SmootherSpec &spec) {
	return std::visit(overloaded {
	                      [](const NoSmoother &) { return std::string("none"); },
	                      [](const SavitzkyGolaySmoother &s) {
		                      return "sg:" + std::to_string(s.window_length) + ":" + std::to_string(s.polyorder);
	                      },
	                      [](const MovingAverageSmoother &m) { return "ma:" + std::to_string(m.window); },
	                  },
	                  spec);
}

std::vector<double> savgol_coefficients(std::size_t window_length, std::size_t polyorder, std::size_t derivative) {
	check_savgol(window_length, polyorder);
	std::vector<double> weights(window_length, 0.0);
	if (derivative > polyorder) {
		return weights;
	}
	const auto fit = fit_operator(window_length, window_length / 2, polyorder);
	double factorial = 1.0;
	for (std::size_t i = 2; i <= derivative; ++i) {
		factorial *= static_cast<double>(i);
	}
	for (std::size_t j = 0; j < window_length; ++j) {
		weights[j] = factorial * fit.pinv(static_cast<Eigen::Index>(derivative), static_cast<Eigen::Index>(j));
	}
	return weights;
}

SmoothingKernel::SmoothingKernel(const SmootherSpec &spec) {
	std::size_t order = 0;
	std::visit(overloaded {
	               [&](const NoSmoother &) {
		               window_ = 1;
		               anchor_ = 0;
	               },
	               [&](const SavitzkyGolaySmoother &s) {
		               check_savgol(s.window_length, s.polyorder);
		               window_ = s.window_length;
		               anchor_ = s.window_length / 2;
		               order = s.polyorder;
	               },
	               [&](const MovingAverageSmoother &m) {
		               if (m.window < 1) {
			               throw InvalidWindow("moving-average window must be at least 1");
		               }
		               window_ = m.window;
		               anchor_ = (m.window - 1) / 2;
	               },
	           },
	           spec);
	const auto fit = fit_operator(window_, anchor_, order);
	const Eigen::MatrixXd hat = fit.design * fit.pinv;
	hat_.resize(window_ * window_);
	for (std::size_t i = 0; i < window_; ++i) {
		for (std::size_t j = 0; j < window_; ++j) {
			hat_[i * window_ + j] = hat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
		}
	}
}

namespace {

double dot(std::span<const double> w, const double *x) {
	double acc = 0.0;
	for (std::size_t j = 0; j < w.size(); ++j) {
		acc += w[j] * x[j];
	}
	return acc;
}

void smooth_into(const SmoothingKernel &kernel, std::span<const double> x, double *out) {
	const auto n = x.size();
	const auto w = kernel.window();
	const auto h = kernel.anchor();
	for (std::size_t i = 0; i < n; ++i) {
		if (i < h) {
			out[i] = dot(kernel.row(i), x.data());
		} else if (i + w - h <= n) {
			out[i] = dot(kernel.row(h), x.data() + (i - h));
		} else {
			out[i] = dot(kernel.row(i - (n - w)), x.data() + (n - w));
		}
	}
}

} // namespace

std::vector<double> smooth(std::span<const double> series, const SmootherSpec &spec) {
	const SmoothingKernel kernel(spec);
	if (series.size() < kernel.window()) {
		throw SeriesTooShort("series of length " + std::to_string(series.size()) + " is shorter than the " +
		                     std::to_string(kernel.window()) + "-point window");
	}
	std::vector<double> out(series.size());
	smooth_into(kernel, series, out.data());
	return out;
}

std::vector<double> smooth_runs(std::span<const double> series, const SmootherSpec &spec) {
	const SmoothingKernel kernel(spec);
	std::vector<double> out(series.begin(), series.end());
	std::size_t i = 0;
	while (i < series.size()) {
		if (std::isnan(series[i])) {
			++i;
			continue;
		}
		auto j = i;
		while (j < series.size() && !std::isnan(series[j])) {
			++j;
		}
		if (j - i >= kernel.window()) {
			smooth_into(kernel, series.subspan(i, j - i), out.data() + i);
		}
		i = j;
	}
	return out;
}

double StreamingSmoother::apply(std::size_t row, std::size_t window_start) const {
	const auto base = run_length_ - tail_.size();
	const auto w = kernel_.row(row);
	double acc = 0.0;
	for (std::size_t j = 0; j < w.size(); ++j) {
		acc += w[j] * tail_[window_start - base + j];
	}
	return acc;
}

void StreamingSmoother::push(double value, std::vector<double> &out) {
	if (std::isnan(value)) {
		finish_run(out);
		out.push_back(value);
		return;
	}
	tail_.push_back(value);
	++run_length_;
	const auto w = kernel_.window();
	const auto h = kernel_.anchor();
	if (run_length_ >= w) {
		const auto last_ready = run_length_ - w + h;
		for (; emitted_ <= last_ready; ++emitted_) {
			if (emitted_ < h) {
				out.push_back(apply(emitted_, 0));
			} else {
				out.push_back(apply(h, emitted_ - h));
			}
		}
	}
	while (tail_.size() > w) {
		tail_.pop_front();
	}
}

void StreamingSmoother::finish_run(std::vector<double> &out) {
	const auto w = kernel_.window();
	if (run_length_ < w) {
		for (; emitted_ < run_length_; ++emitted_) {
			out.push_back(tail_[emitted_]);
		}
	} else {
		const auto start = run_length_ - w;
		for (; emitted_ < run_length_; ++emitted_) {
			out.push_back(apply(emitted_ - start, start));
		}
	}
	tail_.clear();
	run_length_ = 0;
	emitted_ = 0;
}

void StreamingSmoother::flush(std::vector<double> &out) {
	finish_run(out);
}

} // namespace qbsd
