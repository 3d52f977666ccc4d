#include "doctest.h"

#include "commands.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qbsd;

namespace {

namespace fs = std::filesystem;

struct Result {
	int code = 0;
	std::string out;
	std::string err;
};

Result run_cli(std::vector<std::string> args) {
	args.insert(args.begin(), "qbsd");
	std::vector<const char *> argv;
	for (const auto &a : args) {
		argv.push_back(a.c_str());
	}
	std::ostringstream out;
	std::ostringstream err;
	const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
	return {code, out.str(), err.str()};
}

fs::path tmp(const std::string &name) {
	fs::create_directories(QBSD_TEST_TMP);
	return fs::path(QBSD_TEST_TMP) / name;
}

std::string slurp(const fs::path &p) {
	std::ifstream in(p, std::ios::binary);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::vector<std::string> lines(const std::string &text) {
	std::vector<std::string> out;
	std::istringstream in(text);
	for (std::string line; std::getline(in, line);) {
		out.push_back(line);
	}
	return out;
}

std::vector<std::string> cells(const std::string &line) {
	std::vector<std::string> out;
	std::stringstream ss(line);
	for (std::string c; std::getline(ss, c, ',');) {
		out.push_back(c);
	}
	if (!line.empty() && line.back() == ',') {
		out.emplace_back();
	}
	return out;
}

} // namespace

TEST_CASE("evaluate on the builtin synthetic series") {
	const auto r = run_cli({"evaluate"});
	CHECK(r.code == 0);
	CHECK(r.out.find("mape") != std::string::npos);
	CHECK(r.out.find("0.00 ") != std::string::npos);
}

TEST_CASE("two methods add a significance column") {
	const auto r = run_cli({"evaluate", "--method", "qbsd", "--method", "persistence", "--k", "4", "--noise", "5",
	                        "--format", "json"});
	REQUIRE(r.code == 0);
	const auto j = nlohmann::json::parse(r.out);
	REQUIRE(j["results"].size() == 2);
	CHECK(j["results"][0]["method"] == "qbsd");
	CHECK_FALSE(j["results"][0].contains("wilcoxon"));
	const auto p = j["results"][1]["wilcoxon"]["p_value"].get<double>();
	CHECK(p >= 0.0);
	CHECK(p <= 1.0);

	const auto table = run_cli({"evaluate", "--method", "qbsd", "--method", "seasonal-naive", "--noise", "5"});
	CHECK(table.code == 0);
	CHECK(table.out.find("p_value") != std::string::npos);
	CHECK(table.out.find("seasonal-naive(672)") != std::string::npos);
}

TEST_CASE("evaluate writes records and a report") {
	const auto records = tmp("records.csv");
	const auto report = tmp("report.json");
	const auto r = run_cli({"evaluate", "--records", records.string(), "--report", report.string(), "--format", "csv"});
	REQUIRE(r.code == 0);
	const auto rows = lines(slurp(records));
	REQUIRE(rows.size() == 28 * 96 + 1);
	CHECK(rows[0].rfind("timestamp,actual,forecast,q1,q3,iqr,diff_residual,norm_residual", 0) == 0);
	const auto j = nlohmann::json::parse(slurp(report));
	CHECK(j["results"][0]["mape"].get<double>() == 0.0);
	CHECK(lines(r.out).size() == 2);
}

TEST_CASE("evaluate reads several files in parallel") {
	const auto a = tmp("series_a.csv");
	const auto b = tmp("series_b.csv");
	REQUIRE(run_cli({"synth", "-o", a.string(), "--noise", "2", "--seed", "1"}).code == 0);
	REQUIRE(run_cli({"synth", "-o", b.string(), "--noise", "2", "--seed", "2"}).code == 0);
	const auto r = run_cli({"evaluate", "-i", a.string(), "-i", b.string(), "--parallel", "2", "--format", "csv"});
	REQUIRE(r.code == 0);
	const auto rows = lines(r.out);
	REQUIRE(rows.size() == 3);
	CHECK(rows[1].rfind("series_a,qbsd,2688,", 0) == 0);
	CHECK(rows[2].rfind("series_b,qbsd,2688,", 0) == 0);
}

TEST_CASE("exit codes") {
	const auto missing = run_cli({"evaluate", "--input", "/no/such/file.csv"});
	CHECK(missing.code == 2);
	CHECK(missing.err.find("/no/such/file.csv") != std::string::npos);

	CHECK(run_cli({"evaluate", "--scheme", "fortnightly"}).code == 1);
	CHECK(run_cli({"evaluate", "--method", "arima"}).code == 1);
	CHECK(run_cli({"evaluate", "--dataset", "nope"}).code == 1);
	CHECK(run_cli({"evaluate", "--c", "0"}).code == 1);
	CHECK(run_cli({"evaluate", "--smoother", "sg:4:2"}).code == 1);
	CHECK(run_cli({"evaluate", "--train-window", "14"}).code == 1);
	CHECK(run_cli({"evaluate", "--bogus"}).code == 1);
	CHECK(run_cli({}).code == 1);
	CHECK(run_cli({"--help"}).code == 0);

	const auto bad = tmp("bad.csv");
	std::ofstream(bad) << "timestamp,value\n2023-04-01T00:00:00,1\n2023-04-01T00:15:00,zzz\n";
	const auto parse = run_cli({"forecast", "-i", bad.string()});
	CHECK(parse.code == 2);
	CHECK(parse.err.find("row 3") != std::string::npos);
	CHECK(parse.err.find("value") != std::string::npos);

	CHECK(run_cli({"synth", "-o", "/no/such/dir/out.csv"}).code == 2);
}

TEST_CASE("config file mirrors the flags and flags win") {
	const auto cfg = tmp("run.cfg");
	std::ofstream(cfg) << "method=persistence\nformat=csv\nnoise=5\n";
	auto r = run_cli({"evaluate", "--config", cfg.string()});
	REQUIRE(r.code == 0);
	CHECK(r.out.find("synthetic,persistence,") != std::string::npos);
	r = run_cli({"evaluate", "--config", cfg.string(), "--method", "qbsd"});
	REQUIRE(r.code == 0);
	CHECK(r.out.find("synthetic,qbsd,") != std::string::npos);
}

TEST_CASE("forecast streams one record per input row") {
	const auto input = tmp("clean.csv");
	REQUIRE(run_cli({"synth", "-o", input.string()}).code == 0);
	auto r = run_cli({"forecast", "-i", input.string(), "--k", "0"});
	REQUIRE(r.code == 0);
	const auto rows = lines(r.out);
	REQUIRE(rows.size() == 56 * 96 + 1);
	// The first three weeks cannot be forecast; their forecast cells stay empty.
	CHECK(cells(rows[1])[2].empty());
	CHECK(cells(rows[3 * 672])[2].empty());
	CHECK_FALSE(cells(rows[3 * 672 + 1])[2].empty());

	r = run_cli({"forecast", "-i", input.string(), "--smoother", "sg:11:3"});
	REQUIRE(r.code == 0);
	const auto smoothed = lines(r.out);
	CHECK(smoothed.size() == 56 * 96 + 1);
	CHECK(smoothed[0].find(",q1_smooth,q3_smooth") != std::string::npos);
	CHECK(cells(smoothed[4000]).size() == 12);

	const auto out = tmp("forecast.csv");
	r = run_cli({"forecast", "-i", input.string(), "-o", out.string(), "--test-start", "2023-03-06T00:00:00"});
	REQUIRE(r.code == 0);
	CHECK(lines(slurp(out)).size() == 28 * 96 + 1);
}

TEST_CASE("constant input has zero normalized residuals") {
	const auto input = tmp("constant.csv");
	{
		std::ofstream os(input);
		os << "timestamp,value\n";
		for (int i = 0; i < 30 * 96; ++i) {
			os << 1680307200 + 900 * i << ",7\n";
		}
	}
	const auto r = run_cli({"forecast", "-i", input.string()});
	REQUIRE(r.code == 0);
	const auto rows = lines(r.out);
	std::size_t checked = 0;
	for (std::size_t i = 1; i < rows.size(); ++i) {
		const auto c = cells(rows[i]);
		if (!c[7].empty()) {
			CHECK(c[7] == "0");
			++checked;
		}
	}
	CHECK(checked > 0);
}

TEST_CASE("anomaly flags") {
	const auto clean = tmp("anomaly_clean.csv");
	REQUIRE(run_cli({"synth", "-o", clean.string()}).code == 0);
	auto r = run_cli({"anomaly", "-i", clean.string(), "--k", "0", "--threshold", "3"});
	REQUIRE(r.code == 0);
	CHECK(r.err.find("anomalies: 0") != std::string::npos);

	const auto spiked = tmp("anomaly_spiked.csv");
	REQUIRE(run_cli({"synth", "-o", spiked.string(), "--anomalies", "3000:+500"}).code == 0);
	const auto out = tmp("anomaly_out.csv");
	r = run_cli({"anomaly", "-i", spiked.string(), "--k", "0", "--threshold", "3", "-o", out.string()});
	REQUIRE(r.code == 0);
	CHECK(r.out.find("anomalies: 1") != std::string::npos);
	const auto rows = lines(slurp(out));
	CHECK(rows[0].find("anomaly_flag") != std::string::npos);
	CHECK(cells(rows[3001]).back() == "1");

	CHECK(run_cli({"anomaly", "-i", clean.string(), "--threshold", "0"}).code == 1);
}

TEST_CASE("bench reports both buffers and reference timings") {
	const auto r = run_cli({"bench", "--forecasts", "500", "--method", "qbsd", "--method", "seasonal-naive"});
	REQUIRE(r.code == 0);
	CHECK(r.out.find("qbsd") != std::string::npos);
	CHECK(r.out.find("4w") != std::string::npos);
	CHECK(r.out.find("16w") != std::string::npos);
	CHECK(r.out.find("history scaling") != std::string::npos);
	CHECK(r.out.find("8.72 ms") != std::string::npos);

	const auto j = run_cli({"bench", "--forecasts", "500", "--format", "json"});
	REQUIRE(j.code == 0);
	const auto doc = nlohmann::json::parse(j.out);
	CHECK(doc["rows"][0]["median_ns"].get<double>() > 0.0);
	CHECK(run_cli({"bench", "--forecasts", "0"}).code == 1);
}

TEST_CASE("synth is deterministic and prints its seed") {
	const auto a = tmp("synth_a.csv");
	const auto b = tmp("synth_b.csv");
	const auto ra = run_cli({"synth", "-o", a.string(), "--seed", "7", "--noise", "3"});
	REQUIRE(ra.code == 0);
	CHECK(ra.out.find("seed: 7") != std::string::npos);
	REQUIRE(run_cli({"synth", "-o", b.string(), "--seed", "7", "--noise", "3"}).code == 0);
	CHECK(slurp(a) == slurp(b));
	CHECK(lines(slurp(a)).size() == 56 * 96 + 1);
}
