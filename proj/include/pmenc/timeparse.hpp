#pragma once

#include "pmenc/attribute.hpp"

#include <string>
#include <string_view>

namespace pmenc {

// ISO-8601 timestamp: YYYY-MM-DD[Thh:mm[:ss[.fff]]][Z|±hh:mm|±hhmm].
// Missing time-of-day means midnight; missing offset means UTC.
// Throws ParseError on malformed input.
Timestamp parse_iso8601(std::string_view text);

// Pattern-driven parse. Tokens: YYYY MM DD hh mm ss .SSS ±zz:zz; every other
// pattern character must match the input literally. Components absent from
// the pattern default to month/day 1, time 00:00:00.000, offset +00:00.
Timestamp parse_timestamp(std::string_view text, std::string_view pattern);

// Inverse of parse_timestamp for the same token set (±zz:zz renders +00:00,
// values are always emitted in UTC).
std::string format_timestamp(Timestamp ts, std::string_view pattern);

// Fixed ISO rendering used where no user pattern applies.
std::string format_iso8601(Timestamp ts);

} // namespace pmenc
