#include "pmenc/ingest.hpp"
#include "pmenc/timeparse.hpp"

#include "../support/fixtures.hpp"

#include <doctest.h>

#include <map>

using namespace pmenc;

namespace {

CsvMapping basic_mapping() {
    CsvMapping m;
    m.timestamp_format = "YYYY-MM-DD hh:mm:ss";
    return m;
}

const char* kToyCsvHeader = "case_id,activity,timestamp\n";

} // namespace

TEST_CASE("timestamp patterns parse and format round-trip") {
    Timestamp t = parse_timestamp("2020-01-02 03:04:05", "YYYY-MM-DD hh:mm:ss");
    CHECK(t.millis == 1577934245000);
    CHECK(format_timestamp(t, "YYYY-MM-DD hh:mm:ss") == "2020-01-02 03:04:05");

    Timestamp ms = parse_timestamp("2020-01-02 03:04:05.678", "YYYY-MM-DD hh:mm:ss.SSS");
    CHECK(ms.millis == 1577934245678);
    CHECK(format_timestamp(ms, "YYYY-MM-DD hh:mm:ss.SSS") == "2020-01-02 03:04:05.678");

    // +02:00 means two hours earlier in UTC
    Timestamp off = parse_timestamp("2020-01-02T03:04:05+02:00", "YYYY-MM-DDThh:mm:ss\xc2\xb1zz:zz");
    CHECK(off.millis == t.millis - 2 * 3600000);

    CHECK_THROWS_AS(parse_timestamp("2020/01/02", "YYYY-MM-DD"), ParseError);
    CHECK_THROWS_AS(parse_timestamp("2020-13-02", "YYYY-MM-DD"), ParseError);
}

TEST_CASE("iso8601 accepts Z, offsets and fractional seconds") {
    CHECK(parse_iso8601("1970-01-01") == Timestamp(0));
    CHECK(parse_iso8601("1970-01-01T00:00:00Z") == Timestamp(0));
    CHECK(parse_iso8601("1970-01-01T01:00:00+01:00") == Timestamp(0));
    CHECK(parse_iso8601("1970-01-01T00:00:00.250") == Timestamp(250));
    CHECK(parse_iso8601("2020-01-02T03:04:05.678+00:00") == Timestamp(1577934245678));
    CHECK_THROWS_AS(parse_iso8601("not-a-date"), ParseError);
}

TEST_CASE("parse_csv groups one case and orders it") {
    std::string csv = std::string(kToyCsvHeader) +
                      "c1,a,2020-01-01 10:00:00\n"
                      "c1,b,2020-01-01 10:01:00\n"
                      "c1,c,2020-01-01 10:02:00\n";
    LoadResult r = parse_csv(csv, basic_mapping());
    CHECK(r.report.case_count == 1);
    CHECK(r.report.event_count == 3);
    CHECK(r.report.monotonicity_violations == 0);
    const Case* c = r.log.find_case("c1");
    REQUIRE(c != nullptr);
    CHECK(c->trace() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("out-of-order rows are reordered and reported") {
    std::string shuffled = std::string(kToyCsvHeader) +
                           "c1,c,2020-01-01 10:02:00\n"
                           "c1,a,2020-01-01 10:00:00\n"
                           "c1,b,2020-01-01 10:01:00\n";
    std::string sorted = std::string(kToyCsvHeader) +
                         "c1,a,2020-01-01 10:00:00\n"
                         "c1,b,2020-01-01 10:01:00\n"
                         "c1,c,2020-01-01 10:02:00\n";
    LoadResult a = parse_csv(shuffled, basic_mapping());
    LoadResult b = parse_csv(sorted, basic_mapping());
    CHECK(a.report.monotonicity_violations > 0);
    CHECK(b.report.monotonicity_violations == 0);
    CHECK(a.log.find_case("c1")->trace() == b.log.find_case("c1")->trace());
}

TEST_CASE("duplicate (case,timestamp) rows keep their original order") {
    std::string csv = std::string(kToyCsvHeader) +
                      "c1,x,2020-01-01 10:00:00\n"
                      "c1,y,2020-01-01 10:00:00\n";
    LoadResult r = parse_csv(csv, basic_mapping());
    CHECK(r.log.find_case("c1")->trace() == std::vector<std::string>{"x", "y"});
}

TEST_CASE("csv failure modes") {
    CsvMapping m = basic_mapping();

    SUBCASE("unknown mapped column is a configuration error") {
        m.case_column = "nope";
        CHECK_THROWS_AS(parse_csv(std::string(kToyCsvHeader) + "c1,a,2020-01-01 10:00:00\n", m),
                        ConfigError);
    }
    SUBCASE("unparseable timestamp names the row") {
        try {
            parse_csv(std::string(kToyCsvHeader) + "c1,a,garbage\n", m);
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        }
    }
    SUBCASE("missing timestamp is fatal") {
        CHECK_THROWS_AS(parse_csv(std::string(kToyCsvHeader) + "c1,a,\n", m), DataError);
    }
    SUBCASE("mandatory columns must be distinct") {
        m.activity_column = "case_id";
        CHECK_THROWS_AS(parse_csv(kToyCsvHeader, m), ConfigError);
    }
    SUBCASE("empty input lacks a header") {
        CHECK_THROWS_AS(parse_csv("", m), DataError);
    }
}

TEST_CASE("empty activity cells load as absent and are counted") {
    std::string csv = std::string(kToyCsvHeader) +
                      "c1,,2020-01-01 10:00:00\n"
                      "c1,b,2020-01-01 10:01:00\n";
    LoadResult r = parse_csv(csv, basic_mapping());
    CHECK(r.report.missing_activity == 1);
    CHECK(r.log.find_case("c1")->events[0].activity() == nullptr);
}

TEST_CASE("extra columns parse with their declared types") {
    CsvMapping m = basic_mapping();
    m.extra_columns = {{"cost", "cost", AttributeValue::Kind::real},
                       {"age", "age", AttributeValue::Kind::integer}};
    std::string csv = "case_id,activity,timestamp,cost,age\n"
                      "c1,a,2020-01-01 10:00:00,12.5,30\n"
                      "c1,b,2020-01-01 10:01:00,,\n";
    LoadResult r = parse_csv(csv, m);
    const Case* c = r.log.find_case("c1");
    CHECK(c->events[0].attribute("cost").real() == 12.5);
    CHECK(c->events[0].attribute("age").integer() == 30);
    CHECK(c->events[1].attribute("cost").is_absent());

    CHECK_THROWS_AS(parse_csv("case_id,activity,timestamp,cost,age\n"
                              "c1,a,2020-01-01 10:00:00,abc,30\n",
                              m),
                    DataError);
}

TEST_CASE("rfc4180 quoting") {
    std::string csv = std::string(kToyCsvHeader) +
                      "c1,\"hello, \"\"world\"\"\",2020-01-01 10:00:00\n";
    LoadResult r = parse_csv(csv, basic_mapping());
    CHECK(*r.log.find_case("c1")->events[0].activity() == "hello, \"world\"");
}

static const char* kXesFixture = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0">
  <extension name="Concept" prefix="concept" uri="http://www.xes-standard.org/concept.xesext"/>
  <global scope="event"><string key="concept:name" value="UNKNOWN"/></global>
  <classifier name="Activity" keys="concept:name"/>
  <trace>
    <string key="concept:name" value="case42"/>
    <event>
      <string key="concept:name" value="register"/>
      <string key="org:resource" value="alice"/>
      <date key="time:timestamp" value="2020-01-01T10:00:00.000+00:00"/>
      <float key="cost" value="50.5"/>
      <int key="attempts" value="2"/>
      <boolean key="urgent" value="true"/>
    </event>
    <event>
      <string key="concept:name" value="review"/>
      <date key="time:timestamp" value="2020-01-01T11:00:00.000+00:00"/>
    </event>
    <event>
      <string key="concept:name" value="close"/>
      <date key="time:timestamp" value="2020-01-01T12:00:00.000+00:00"/>
    </event>
  </trace>
</log>
)";

TEST_CASE("parse_xes maps the subset field by field") {
    LoadResult r = parse_xes(kXesFixture);
    CHECK(r.report.case_count == 1);
    CHECK(r.report.event_count == 3);

    const Case* c = r.log.find_case("case42");
    REQUIRE(c != nullptr);
    REQUIRE(c->events.size() == 3);
    const Event& e = c->events[0];
    CHECK(*e.activity() == "register");
    CHECK(e.attribute("resource").text() == "alice"); // prefix stripped
    CHECK(e.attribute("cost").real() == 50.5);
    CHECK(e.attribute("attempts").integer() == 2);
    CHECK(e.attribute("urgent").integer() == 1);
    CHECK(e.timestamp() == parse_iso8601("2020-01-01T10:00:00Z"));
    CHECK(c->trace() == std::vector<std::string>{"register", "review", "close"});

    // extensions/globals/classifiers are warned about, not fatal
    CHECK(!r.warnings.empty());
}

TEST_CASE("trace name declared after its events still names the case") {
    const char* xes = "<log><trace>"
                      "<event><string key=\"concept:name\" value=\"a\"/>"
                      "<date key=\"time:timestamp\" value=\"2020-01-01T00:00:00Z\"/></event>"
                      "<string key=\"concept:name\" value=\"late-name\"/>"
                      "</trace></log>";
    LoadResult r = parse_xes(xes);
    CHECK(r.log.find_case("late-name") != nullptr);
}

TEST_CASE("empty <log> gives an empty event log") {
    LoadResult r = parse_xes("<log></log>");
    CHECK(r.log.case_count() == 0);
    CHECK(r.report.event_count == 0);
}

TEST_CASE("xes event without a timestamp is fatal and names the trace") {
    const char* xes = "<log><trace><event>"
                      "<string key=\"concept:name\" value=\"a\"/>"
                      "</event></trace></log>";
    try {
        parse_xes(xes);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("trace 1") != std::string::npos);
    }
}

TEST_CASE("malformed xml reports line and column") {
    try {
        parse_xes("<log>\n  <trace\n</log>");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 2);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("xes activity may be missing; it loads as absent") {
    const char* xes = "<log><trace><event>"
                      "<date key=\"time:timestamp\" value=\"2020-01-01T00:00:00Z\"/>"
                      "</event></trace></log>";
    LoadResult r = parse_xes(xes);
    CHECK(r.report.missing_activity == 1);
    CHECK(r.log.cases()[0].events[0].activity() == nullptr);
}

TEST_CASE("validate reports on hand-built logs") {
    SUBCASE("clean fixture reports zero violations") {
        ValidationReport r = validate(fixtures::toy_log());
        CHECK(r.event_count == 3 * 3 + 11 * 3 + 20 * 4);
        CHECK(r.case_count == 34);
        CHECK(r.monotonicity_violations == 0);
        CHECK(r.duplicate_event_ids == 0);
        CHECK(r.missing_activity == 0);
        CHECK(r.missing_timestamp == 0);
    }
    SUBCASE("missing activity is counted") {
        LogBuilder b;
        b.add_event(fixtures::make_event("e1", "c1", std::nullopt, 1000));
        CHECK(validate(b.build()).missing_activity == 1);
    }
    SUBCASE("duplicate event ids are counted") {
        LogBuilder b;
        b.add_event(fixtures::make_event("e1", "c1", "a", 1000));
        b.add_event(fixtures::make_event("e1", "c2", "a", 1000));
        CHECK(validate(b.build()).duplicate_event_ids == 1);
    }
    SUBCASE("missing timestamp is counted on raw cases") {
        Event e;
        e.id = "e1";
        e.case_id = "c1";
        e.attributes["activity"] = AttributeValue("a");
        EventLog log = EventLog::from_cases({Case{"c1", {e}}});
        CHECK(validate(log).missing_timestamp == 1);
    }
}

TEST_CASE("parsing the same bytes twice is deterministic") {
    std::string csv = std::string(kToyCsvHeader) +
                      "c2,b,2020-01-01 10:05:00\n"
                      "c1,a,2020-01-01 10:00:00\n"
                      "c1,b,2020-01-01 10:01:00\n";
    LoadResult a = parse_csv(csv, basic_mapping());
    LoadResult b = parse_csv(csv, basic_mapping());
    CHECK(write_csv_log(a.log) == write_csv_log(b.log));
}

TEST_CASE("write then re-parse preserves the event multiset") {
    EventLog log = fixtures::toy_log();
    std::string csv = write_csv_log(log, "YYYY-MM-DD hh:mm:ss");
    LoadResult r = parse_csv(csv, basic_mapping());

    REQUIRE(r.log.case_count() == log.case_count());
    for (const Case& c : log.cases()) {
        const Case* back = r.log.find_case(c.id);
        REQUIRE(back != nullptr);
        REQUIRE(back->events.size() == c.events.size());
        for (std::size_t i = 0; i < c.events.size(); ++i) {
            CHECK(back->events[i].attribute("activity") == c.events[i].attribute("activity"));
            CHECK(back->events[i].attribute("timestamp") == c.events[i].attribute("timestamp"));
        }
    }
}
