#pragma once

#include "pmenc/log.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pmenc {

// Declares how CSV columns map onto event attributes.
struct CsvColumn {
    std::string column;
    std::string attribute;
    AttributeValue::Kind type = AttributeValue::Kind::text;
};

struct CsvMapping {
    std::string case_column = "case_id";
    std::string activity_column = "activity";
    std::string timestamp_column = "timestamp";
    std::string timestamp_format = "YYYY-MM-DD hh:mm:ss.SSS";
    std::vector<CsvColumn> extra_columns;
};

struct ValidationReport {
    std::size_t event_count = 0;
    std::size_t case_count = 0;
    std::size_t monotonicity_violations = 0; // events the sort had to move
    std::size_t duplicate_event_ids = 0;
    std::size_t missing_activity = 0;
    std::size_t missing_timestamp = 0;       // fatal when found at parse time
};

// A parsed log plus what the parser observed along the way.
struct LoadResult {
    EventLog log;
    ValidationReport report;
    std::vector<std::string> warnings;
};

// XES subset: log/trace/event elements with string/date/int/float/boolean
// attributes. concept:name become the activity (events) or the case id
// (traces); time:timestamp becomes "timestamp"; org:resource becomes
// "resource"; other keys are kept verbatim. Extensions, globals and
// classifiers are skipped with a warning.
// Throws ParseError (with line/column) on malformed XML and DataError when an
// event lacks time:timestamp.
LoadResult parse_xes(std::string_view bytes);

// Header row mandatory; rows grouped by the case column and stably sorted by
// parsed timestamp. An unparseable timestamp is fatal and names the row; a
// mapping that names a column missing from the header is a ConfigError.
// Empty cells load as absent (absent activity is tolerated, absent timestamp
// is fatal).
LoadResult parse_csv(std::string_view bytes, const CsvMapping& mapping);

// Recomputes a report from an in-memory log. A log built by the parsers
// reports zero violations; hand-built logs may not.
ValidationReport validate(const EventLog& log);

// Serializes a log to CSV with canonical columns: case_id, activity,
// timestamp, then every other observed attribute name in sorted order.
// Timestamps use `timestamp_format`; absent renders as an empty cell.
std::string write_csv_log(const EventLog& log,
                          std::string_view timestamp_format = "YYYY-MM-DD hh:mm:ss.SSS");

} // namespace pmenc
