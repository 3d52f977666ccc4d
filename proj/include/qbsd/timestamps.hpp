#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qbsd {

/// Accepts integer epoch seconds, "YYYY-MM-DD", or RFC 3339 style
/// "YYYY-MM-DD[T ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]". Offsets are applied;
/// zone-less times are taken as UTC. Sub-second remainders are rejected.
std::optional<std::int64_t> parse_timestamp(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SS" (no zone suffix).
std::string format_timestamp(std::int64_t epoch_seconds);

} // namespace qbsd
