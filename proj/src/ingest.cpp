#include "pmenc/ingest.hpp"
#include "pmenc/csv.hpp"
#include "pmenc/timeparse.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_set>

namespace pmenc {

namespace {

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ConfigError("column '" + name + "' not found in CSV header");
    return static_cast<std::size_t>(it - header.begin());
}

AttributeValue parse_typed_cell(const std::string& raw, AttributeValue::Kind type,
                                const std::string& format, std::size_t row) {
    if (raw.empty()) return AttributeValue::absent();
    switch (type) {
        case AttributeValue::Kind::text: return AttributeValue(raw);
        case AttributeValue::Kind::integer: {
            std::int64_t v = 0;
            auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
                throw DataError("row " + std::to_string(row) + ": bad integer '" + raw + "'");
            return AttributeValue(v);
        }
        case AttributeValue::Kind::real: {
            double v = 0;
            auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
                throw DataError("row " + std::to_string(row) + ": bad number '" + raw + "'");
            return AttributeValue(v);
        }
        case AttributeValue::Kind::timestamp:
            try {
                return AttributeValue(parse_timestamp(raw, format));
            } catch (const ParseError& e) {
                throw DataError("row " + std::to_string(row) + ": " + e.what());
            }
        default: return AttributeValue::absent();
    }
}

} // namespace

LoadResult parse_csv(std::string_view bytes, const CsvMapping& mapping) {
    if (mapping.case_column == mapping.activity_column ||
        mapping.case_column == mapping.timestamp_column ||
        mapping.activity_column == mapping.timestamp_column)
        throw ConfigError("case, activity and timestamp columns must be distinct");

    auto records = read_csv(bytes);
    if (records.empty()) throw DataError("CSV input has no header row");

    const auto& header = records.front();
    std::size_t case_col = column_index(header, mapping.case_column);
    std::size_t act_col = column_index(header, mapping.activity_column);
    std::size_t time_col = column_index(header, mapping.timestamp_column);
    std::vector<std::pair<std::size_t, const CsvColumn*>> extras;
    for (const CsvColumn& c : mapping.extra_columns)
        extras.emplace_back(column_index(header, c.column), &c);

    LoadResult result;
    LogBuilder builder;
    for (std::size_t row = 1; row < records.size(); ++row) {
        const auto& rec = records[row];
        if (rec.size() == 1 && rec[0].empty()) continue; // stray blank line
        if (rec.size() != header.size())
            throw DataError("row " + std::to_string(row + 1) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(rec.size()));

        Event e;
        e.id = "row" + std::to_string(row + 1);
        e.case_id = rec[case_col];

        if (rec[time_col].empty()) {
            ++result.report.missing_timestamp;
            throw DataError("row " + std::to_string(row + 1) + ": missing timestamp");
        }
        try {
            e.attributes["timestamp"] =
                AttributeValue(parse_timestamp(rec[time_col], mapping.timestamp_format));
        } catch (const ParseError& err) {
            throw DataError("row " + std::to_string(row + 1) + ": " + err.what());
        }

        if (rec[act_col].empty()) {
            e.attributes["activity"] = AttributeValue::absent();
            ++result.report.missing_activity;
        } else {
            e.attributes["activity"] = AttributeValue(rec[act_col]);
        }

        for (const auto& [idx, col] : extras)
            e.attributes[col->attribute] =
                parse_typed_cell(rec[idx], col->type, mapping.timestamp_format, row + 1);

        builder.add_event(std::move(e));
    }

    result.report.monotonicity_violations = builder.reordered_events();
    result.log = builder.build();
    result.report.event_count = result.log.event_count();
    result.report.case_count = result.log.case_count();
    return result;
}

ValidationReport validate(const EventLog& log) {
    ValidationReport report;
    report.case_count = log.case_count();
    std::unordered_set<std::string> seen_ids;
    for (const Case& c : log.cases()) {
        std::int64_t running_max = INT64_MIN;
        for (const Event& e : c.events) {
            ++report.event_count;
            if (!seen_ids.insert(e.id).second) ++report.duplicate_event_ids;
            const AttributeValue& act = e.attribute("activity");
            if (act.is_absent()) ++report.missing_activity;
            const AttributeValue& ts = e.attribute("timestamp");
            if (!ts.is_timestamp()) {
                ++report.missing_timestamp;
            } else {
                if (ts.timestamp().millis < running_max) ++report.monotonicity_violations;
                running_max = std::max(running_max, ts.timestamp().millis);
            }
        }
    }
    return report;
}

std::string write_csv_log(const EventLog& log, std::string_view timestamp_format) {
    std::set<std::string> other_keys;
    for (const Case& c : log.cases())
        for (const Event& e : c.events)
            for (const auto& [k, v] : e.attributes)
                if (k != "activity" && k != "timestamp") other_keys.insert(k);

    std::vector<std::string> header = {"case_id", "activity", "timestamp"};
    header.insert(header.end(), other_keys.begin(), other_keys.end());

    std::string out;
    append_csv_row(out, header);
    std::vector<std::string> row;
    for (const Case& c : log.cases()) {
        for (const Event& e : c.events) {
            row.clear();
            row.push_back(c.id);
            const std::string* act = e.activity();
            row.push_back(act ? *act : "");
            row.push_back(format_timestamp(e.timestamp(), timestamp_format));
            for (const std::string& k : other_keys) {
                const AttributeValue& v = e.attribute(k);
                row.push_back(v.is_timestamp() ? format_timestamp(v.timestamp(), timestamp_format)
                                               : v.render());
            }
            append_csv_row(out, row);
        }
    }
    return out;
}

} // namespace pmenc
