#pragma once

#include "run_config.hpp"

#include <iosfwd>

namespace qbsd::cli {

/// Parses argv, runs the selected subcommand and returns the process exit
/// code. Diagnostics go to err; tables and streamed CSV go to out unless an
/// output path is given.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

int cmd_evaluate(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_forecast(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_anomaly(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_bench(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_synth(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// 1 for errors the user fixes in flags, 2 for data and I/O failures.
int exit_code_for(ErrorCode code) noexcept;

} // namespace qbsd::cli
