#include "qbsd/datasets.hpp"

#include "qbsd/error.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qbsd {

std::vector<double> default_daily_profile(std::int64_t slots_per_day) {
	std::vector<double> profile(static_cast<std::size_t>(slots_per_day));
	for (std::int64_t s = 0; s < slots_per_day; ++s) {
		const double hour = 24.0 * static_cast<double>(s) / static_cast<double>(slots_per_day);
		const double midday = std::exp(-std::pow((hour - 13.0) / 4.0, 2.0));
		const double evening = 0.45 * std::exp(-std::pow((hour - 20.5) / 1.8, 2.0));
		profile[static_cast<std::size_t>(s)] = 40.0 + 460.0 * (midday + evening);
	}
	return profile;
}

SeriesFrame generate_synthetic(const SynthSpec &spec) {
	if (spec.days < 1 || spec.slots_per_day < 1 || kSecondsPerDay % spec.slots_per_day != 0) {
		throw InvalidConfig("synthetic spec needs days >= 1 and slots_per_day dividing 86400");
	}
	if (spec.noise_std < 0.0) {
		throw InvalidConfig("noise_std must be non-negative");
	}
	const auto g = Granularity::from_interval(kSecondsPerDay / spec.slots_per_day);
	const auto profile = spec.daily_profile.empty() ? default_daily_profile(spec.slots_per_day) : spec.daily_profile;
	if (static_cast<std::int64_t>(profile.size()) != spec.slots_per_day) {
		throw InvalidConfig("daily profile must have one entry per slot of the day");
	}
	const auto first = align(spec.start_epoch, g);
	const auto total = spec.days * spec.slots_per_day;

	std::vector<double> values(static_cast<std::size_t>(total));
	std::mt19937_64 rng(spec.seed);
	std::normal_distribution<double> noise(0.0, spec.noise_std > 0.0 ? spec.noise_std : 1.0);
	for (std::int64_t i = 0; i < total; ++i) {
		const SlotCoord slot = first + i;
		const auto dow = slot.day_of_week(g);
		const double scale = dow >= 5 ? spec.weekend_scale : spec.weekday_scale;
		double v = profile[static_cast<std::size_t>(slot.slot_of_day(g))] * scale;
		if (spec.noise_std > 0.0) {
			v += noise(rng);
		}
		values[static_cast<std::size_t>(i)] = v;
	}
	for (const auto &inj : spec.anomalies) {
		if (inj.slot_index < 0 || inj.slot_index >= total) {
			throw InvalidConfig("anomaly slot " + std::to_string(inj.slot_index) + " is outside the generated range");
		}
		values[static_cast<std::size_t>(inj.slot_index)] += inj.magnitude;
	}
	std::vector<bool> dropped(static_cast<std::size_t>(total), false);
	for (const auto &[start, count] : spec.missing) {
		for (auto i = std::max<std::int64_t>(start, 0); i < std::min(start + count, total); ++i) {
			dropped[static_cast<std::size_t>(i)] = true;
		}
	}

	SeriesFrame frame {g, {}};
	frame.points.reserve(static_cast<std::size_t>(total));
	for (std::int64_t i = 0; i < total; ++i) {
		if (!dropped[static_cast<std::size_t>(i)]) {
			frame.points.push_back({first + i, values[static_cast<std::size_t>(i)]});
		}
	}
	return frame;
}

std::vector<Injection> parse_injections(const std::string &text) {
	std::vector<Injection> out;
	std::stringstream ss(text);
	for (std::string item; std::getline(ss, item, ',');) {
		if (item.empty()) {
			continue;
		}
		const auto colon = item.find(':');
		if (colon == std::string::npos) {
			throw InvalidConfig("anomaly '" + item + "' must look like slot:+magnitude");
		}
		try {
			std::size_t used_slot = 0;
			std::size_t used_mag = 0;
			const auto slot_text = item.substr(0, colon);
			const auto mag_text = item.substr(colon + 1);
			const auto slot = std::stoll(slot_text, &used_slot);
			const auto mag = std::stod(mag_text, &used_mag);
			if (used_slot != slot_text.size() || used_mag != mag_text.size()) {
				throw std::invalid_argument(item);
			}
			out.push_back({slot, mag});
		} catch (const std::logic_error &) {
			throw InvalidConfig("anomaly '" + item + "' must look like slot:+magnitude");
		}
	}
	return out;
}

} // namespace qbsd
