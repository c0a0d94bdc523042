#pragma once

// Shared test fixtures. The "toy log" is the three-variant log
// [<a,b,c> x3, <a,b,a> x11, <a,c,b,a> x20] used across the suites; its
// 34 cases are c01..c34 so that lexicographic case order groups variants.

#include "pmenc/log.hpp"

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

inline pmenc::Event make_event(std::string id, std::string case_id,
                               std::optional<std::string> activity, std::int64_t ts_ms) {
    pmenc::Event e;
    e.id = std::move(id);
    e.case_id = std::move(case_id);
    e.attributes["activity"] =
        activity ? pmenc::AttributeValue(*activity) : pmenc::AttributeValue::absent();
    e.attributes["timestamp"] = pmenc::AttributeValue(pmenc::Timestamp(ts_ms));
    return e;
}

// Multiset of traces with multiplicities -> log with zero-padded case ids.
inline pmenc::EventLog
log_from_variants(const std::vector<std::pair<std::vector<std::string>, int>>& variants) {
    pmenc::LogBuilder builder;
    int case_n = 0;
    int total = 0;
    for (const auto& [trace, mult] : variants) total += mult;
    const int width = total >= 100 ? 3 : 2;
    for (const auto& [trace, mult] : variants) {
        for (int m = 0; m < mult; ++m) {
            ++case_n;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "c%0*d", width, case_n);
            std::string cid = buf;
            std::int64_t base = 1577836800000LL + static_cast<std::int64_t>(case_n) * 86400000LL;
            for (std::size_t i = 0; i < trace.size(); ++i) {
                builder.add_event(make_event(cid + "e" + std::to_string(i + 1), cid, trace[i],
                                             base + static_cast<std::int64_t>(i) * 60000));
            }
        }
    }
    return builder.build();
}

inline pmenc::EventLog toy_log() {
    return log_from_variants({{{"a", "b", "c"}, 3}, {{"a", "b", "a"}, 11}, {{"a", "c", "b", "a"}, 20}});
}

// Brute force directly-follows oracle over a variant multiset; kept
// independent of the flow module on purpose.
inline std::map<std::pair<std::string, std::string>, std::uint64_t>
df_oracle(const std::vector<std::pair<std::vector<std::string>, int>>& variants) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    for (const auto& [trace, mult] : variants)
        for (std::size_t i = 0; i + 1 < trace.size(); ++i)
            counts[{trace[i], trace[i + 1]}] += static_cast<std::uint64_t>(mult);
    return counts;
}

inline std::vector<std::pair<std::vector<std::string>, int>> toy_variants() {
    return {{{"a", "b", "c"}, 3}, {{"a", "b", "a"}, 11}, {{"a", "c", "b", "a"}, 20}};
}

} // namespace fixtures
