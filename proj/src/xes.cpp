#include "pmenc/ingest.hpp"
#include "pmenc/timeparse.hpp"

#include <charconv>
#include <set>

namespace pmenc {

namespace {

// Just enough XML for XES: elements, attributes, comments, prolog, CDATA and
// the five predefined entities. Text content is skipped; XES carries its data
// in attributes.
class XmlReader {
public:
    enum class Kind { start, end, eof };
    struct Node {
        Kind kind = Kind::eof;
        std::string name;
        std::vector<std::pair<std::string, std::string>> attrs;
    };

    explicit XmlReader(std::string_view s) : s_(s) {
        if (s_.substr(0, 3) == "\xef\xbb\xbf") advance(3); // UTF-8 BOM
    }

    Node next() {
        if (!pending_end_.empty()) {
            Node n{Kind::end, std::move(pending_end_), {}};
            pending_end_.clear();
            return n;
        }
        for (;;) {
            skip_until_markup();
            if (done()) return Node{};
            // at '<'
            if (match("<!--")) {
                skip_past("-->", "unterminated comment");
            } else if (match("<![CDATA[")) {
                skip_past("]]>", "unterminated CDATA section");
            } else if (match("<!")) {
                skip_past(">", "unterminated declaration");
            } else if (match("<?")) {
                skip_past("?>", "unterminated processing instruction");
            } else if (match("</")) {
                Node n{Kind::end, read_name(), {}};
                skip_ws();
                expect('>');
                return n;
            } else {
                expect('<');
                Node n{Kind::start, read_name(), {}};
                for (;;) {
                    skip_ws();
                    if (done()) fail("unterminated start tag");
                    if (match("/>")) {
                        pending_end_ = n.name;
                        return n;
                    }
                    if (match(">")) return n;
                    std::string name = read_name();
                    skip_ws();
                    expect('=');
                    skip_ws();
                    n.attrs.emplace_back(std::move(name), read_quoted());
                }
            }
        }
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return col_; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

private:
    std::string_view s_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
    std::string pending_end_;

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i, ++pos_) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    bool match(std::string_view tok) {
        if (s_.substr(pos_, tok.size()) == tok) {
            advance(tok.size());
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (done() || peek() != c) fail(std::string("expected '") + c + "'");
        advance(1);
    }

    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n'))
            advance(1);
    }

    void skip_until_markup() {
        while (!done() && peek() != '<') advance(1);
    }

    void skip_past(std::string_view end, const char* err) {
        while (!done()) {
            if (match(end)) return;
            advance(1);
        }
        fail(err);
    }

    static bool name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == ':' || c == '_' || c == '-' || c == '.';
    }

    std::string read_name() {
        if (done() || !name_char(peek())) fail("expected name");
        std::string out;
        while (!done() && name_char(peek())) {
            out += peek();
            advance(1);
        }
        return out;
    }

    std::string read_quoted() {
        if (done() || (peek() != '"' && peek() != '\'')) fail("expected quoted value");
        char quote = peek();
        advance(1);
        std::string out;
        while (!done() && peek() != quote) {
            if (peek() == '&') {
                out += read_entity();
            } else {
                out += peek();
                advance(1);
            }
        }
        if (done()) fail("unterminated attribute value");
        advance(1);
        return out;
    }

    std::string read_entity() {
        advance(1); // '&'
        std::string name;
        while (!done() && peek() != ';' && name.size() < 10) {
            name += peek();
            advance(1);
        }
        if (done() || peek() != ';') fail("malformed entity reference");
        advance(1);
        if (name == "amp") return "&";
        if (name == "lt") return "<";
        if (name == "gt") return ">";
        if (name == "quot") return "\"";
        if (name == "apos") return "'";
        if (name.size() > 1 && name[0] == '#') {
            long code = name[1] == 'x' || name[1] == 'X' ? std::strtol(name.c_str() + 2, nullptr, 16)
                                                         : std::strtol(name.c_str() + 1, nullptr, 10);
            if (code > 0 && code < 128) return std::string(1, static_cast<char>(code));
            return "?"; // non-ASCII references are out of scope
        }
        fail("unknown entity '&" + name + ";'");
    }
};

void skip_subtree(XmlReader& r, const std::string& name) {
    int depth = 0;
    for (;;) {
        auto n = r.next();
        if (n.kind == XmlReader::Kind::eof) r.fail("unexpected end of input inside <" + name + ">");
        if (n.kind == XmlReader::Kind::start) ++depth;
        if (n.kind == XmlReader::Kind::end) {
            if (depth == 0) {
                if (n.name != name) r.fail("mismatched </" + n.name + ">");
                return;
            }
            --depth;
        }
    }
}

const std::string* attr_of(const XmlReader::Node& n, std::string_view key) {
    for (const auto& [k, v] : n.attrs)
        if (k == key) return &v;
    return nullptr;
}

// XES key -> our attribute name.
std::string map_key(const std::string& key) {
    if (key == "concept:name") return "activity";
    if (key == "time:timestamp") return "timestamp";
    if (key == "org:resource") return "resource";
    return key;
}

AttributeValue typed_value(XmlReader& r, const std::string& element, const std::string& raw) {
    if (element == "string") return AttributeValue(raw);
    if (element == "date") return AttributeValue(parse_iso8601(raw));
    if (element == "int") {
        std::int64_t v = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            r.fail("bad int value '" + raw + "'");
        return AttributeValue(v);
    }
    if (element == "float") {
        double v = 0;
        auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            r.fail("bad float value '" + raw + "'");
        return AttributeValue(v);
    }
    if (element == "boolean")
        return AttributeValue(static_cast<std::int64_t>(raw == "true" || raw == "1" ? 1 : 0));
    r.fail("unsupported attribute element <" + element + ">");
}

bool is_attribute_element(const std::string& name) {
    return name == "string" || name == "date" || name == "int" || name == "float" ||
           name == "boolean";
}

} // namespace

LoadResult parse_xes(std::string_view bytes) {
    XmlReader r(bytes);
    LoadResult result;
    std::set<std::string> warned;
    auto warn_once = [&](const std::string& what) {
        if (warned.insert(what).second) result.warnings.push_back(what);
    };

    auto root = r.next();
    if (root.kind != XmlReader::Kind::start || root.name != "log")
        r.fail("expected <log> root element");

    LogBuilder builder;
    std::size_t trace_index = 0;

    for (;;) {
        auto n = r.next();
        if (n.kind == XmlReader::Kind::eof) r.fail("unexpected end of input, <log> not closed");
        if (n.kind == XmlReader::Kind::end) {
            if (n.name != "log") r.fail("mismatched </" + n.name + ">");
            break;
        }
        if (n.name != "trace") {
            if (n.name == "extension" || n.name == "global" || n.name == "classifier")
                warn_once("ignoring <" + n.name + "> elements");
            else
                warn_once("ignoring unsupported <" + n.name + "> elements");
            skip_subtree(r, n.name);
            continue;
        }

        ++trace_index;
        std::string case_id = "trace" + std::to_string(trace_index);
        std::vector<std::map<std::string, AttributeValue>> events;

        for (;;) {
            auto t = r.next();
            if (t.kind == XmlReader::Kind::eof) r.fail("unexpected end of input inside <trace>");
            if (t.kind == XmlReader::Kind::end) {
                if (t.name != "trace") r.fail("mismatched </" + t.name + ">");
                break;
            }
            if (is_attribute_element(t.name)) {
                // trace-level attribute; only the name matters to us
                const std::string* key = attr_of(t, "key");
                const std::string* value = attr_of(t, "value");
                if (key && value && *key == "concept:name") case_id = *value;
                skip_subtree(r, t.name);
                continue;
            }
            if (t.name != "event") {
                warn_once("ignoring unsupported <" + t.name + "> elements");
                skip_subtree(r, t.name);
                continue;
            }

            std::map<std::string, AttributeValue> attrs;
            for (;;) {
                auto a = r.next();
                if (a.kind == XmlReader::Kind::eof) r.fail("unexpected end of input inside <event>");
                if (a.kind == XmlReader::Kind::end) {
                    if (a.name != "event") r.fail("mismatched </" + a.name + ">");
                    break;
                }
                if (!is_attribute_element(a.name)) {
                    warn_once("ignoring unsupported <" + a.name + "> elements");
                    skip_subtree(r, a.name);
                    continue;
                }
                const std::string* key = attr_of(a, "key");
                const std::string* value = attr_of(a, "value");
                if (!key || !value) r.fail("<" + a.name + "> needs key and value attributes");
                attrs[map_key(*key)] = typed_value(r, a.name, *value);
                skip_subtree(r, a.name);
            }
            events.push_back(std::move(attrs));
        }

        std::size_t event_ordinal = 0;
        for (auto& attrs : events) {
            ++event_ordinal;
            auto ts = attrs.find("timestamp");
            if (ts == attrs.end() || !ts->second.is_timestamp())
                throw DataError("event " + std::to_string(event_ordinal) + " in trace " +
                                std::to_string(trace_index) + " is missing time:timestamp");
            if (attrs.find("activity") == attrs.end()) {
                attrs["activity"] = AttributeValue::absent();
                ++result.report.missing_activity;
            }
            Event e;
            e.id = "t" + std::to_string(trace_index) + "e" + std::to_string(event_ordinal);
            e.case_id = case_id;
            e.attributes = std::move(attrs);
            builder.add_event(std::move(e));
        }
    }

    result.report.monotonicity_violations = builder.reordered_events();
    result.log = builder.build();
    result.report.event_count = result.log.event_count();
    result.report.case_count = result.log.case_count();
    return result;
}

} // namespace pmenc
