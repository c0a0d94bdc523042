#include "pmenc/predicate.hpp"
#include "pmenc/timeparse.hpp"

#include <cctype>
#include <charconv>

namespace pmenc {

namespace {

struct Lexer {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw PredicateError("predicate error at position " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool match(std::string_view tok) {
        skip_ws();
        if (s.substr(pos, tok.size()) == tok) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    // Keyword match with a word boundary, so "android" is not "and".
    bool match_word(std::string_view w) {
        skip_ws();
        if (s.substr(pos, w.size()) == w) {
            std::size_t after = pos + w.size();
            if (after >= s.size() || !word_char(s[after])) {
                pos = after;
                return true;
            }
        }
        return false;
    }

    static bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' ||
               c == '.';
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && word_char(s[pos])) ++pos;
        if (pos == start) fail("expected a name");
        return std::string(s.substr(start, pos - start));
    }
};

bool looks_like_date(std::string_view w) {
    // YYYY-MM-DD optionally followed by a time part
    if (w.size() < 10) return false;
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(w[static_cast<std::size_t>(i)]))) return false;
    return w[4] == '-' && w[7] == '-';
}

AttributeValue parse_literal(Lexer& lx) {
    lx.skip_ws();
    if (lx.pos >= lx.s.size()) lx.fail("expected a literal");
    char c = lx.s[lx.pos];
    if (c == '"' || c == '\'') {
        char quote = c;
        ++lx.pos;
        std::string out;
        while (lx.pos < lx.s.size() && lx.s[lx.pos] != quote) out += lx.s[lx.pos++];
        if (lx.pos >= lx.s.size()) lx.fail("unterminated string literal");
        ++lx.pos;
        return AttributeValue(out);
    }
    std::string w = lx.word();
    if (looks_like_date(w)) {
        try {
            return AttributeValue(parse_iso8601(w));
        } catch (const ParseError&) {
            lx.fail("bad date literal '" + w + "'");
        }
    }
    double v = 0;
    auto res = std::from_chars(w.data(), w.data() + w.size(), v);
    if (w.empty() || res.ec != std::errc{} || res.ptr != w.data() + w.size())
        lx.fail("expected a literal (number, quoted text or ISO date), got '" + w + "'");
    return AttributeValue(v);
}

} // namespace

FilterPredicate parse_predicate(std::string_view text) {
    Lexer lx{text};
    FilterPredicate p;
    if (lx.done()) return p;
    for (;;) {
        std::size_t term_start = lx.pos;
        PredicateTerm t;
        t.attribute = lx.word();
        if (lx.match("==")) {
            if (lx.match_word("null")) {
                t.op = CmpOp::absent;
            } else {
                t.op = CmpOp::eq;
                t.literal = parse_literal(lx);
            }
        } else if (lx.match("!=")) {
            if (lx.match_word("null")) {
                t.op = CmpOp::present;
            } else {
                t.op = CmpOp::neq;
                t.literal = parse_literal(lx);
            }
        } else if (lx.match("<=")) {
            t.op = CmpOp::leq;
            t.literal = parse_literal(lx);
        } else if (lx.match(">=")) {
            t.op = CmpOp::geq;
            t.literal = parse_literal(lx);
        } else if (lx.match("<")) {
            t.op = CmpOp::lt;
            t.literal = parse_literal(lx);
        } else if (lx.match(">")) {
            t.op = CmpOp::gt;
            t.literal = parse_literal(lx);
        } else if (lx.match_word("in")) {
            if (!lx.match("[")) lx.fail("expected '[' after 'in'");
            t.op = CmpOp::in_range;
            t.literal = parse_literal(lx);
            if (!lx.match(",")) lx.fail("expected ',' in range");
            t.literal_hi = parse_literal(lx);
            if (!lx.match("]")) lx.fail("expected ']' to close range");
        } else {
            lx.fail("expected an operator after '" + t.attribute + "'");
        }
        lx.skip_ws();
        t.source = std::string(text.substr(term_start, lx.pos - term_start));
        while (!t.source.empty() && std::isspace(static_cast<unsigned char>(t.source.back())))
            t.source.pop_back();
        p.terms.push_back(std::move(t));
        if (lx.done()) break;
        if (!lx.match_word("and")) lx.fail("expected 'and' between terms");
    }
    return p;
}

namespace {

bool ordered_compare(const PredicateTerm& t, const AttributeValue& v) {
    if (!t.literal.is_numeric() || (t.op == CmpOp::in_range && !t.literal_hi.is_numeric()))
        throw PredicateError("term '" + t.source + "': ordered comparison needs a numeric or date literal");
    if (v.is_text())
        throw PredicateError("term '" + t.source + "': attribute '" + t.attribute +
                             "' has a text value; ordered comparison needs numbers or timestamps");
    if (!v.is_numeric()) return false;
    double x = v.as_number();
    switch (t.op) {
        case CmpOp::lt: return x < t.literal.as_number();
        case CmpOp::leq: return x <= t.literal.as_number();
        case CmpOp::gt: return x > t.literal.as_number();
        case CmpOp::geq: return x >= t.literal.as_number();
        case CmpOp::in_range:
            return x >= t.literal.as_number() && x <= t.literal_hi.as_number();
        default: return false;
    }
}

bool equality_compare(const AttributeValue& lit, const AttributeValue& v) {
    if (v.is_absent()) return false;
    if (lit.is_text()) return v.is_text() && v.text() == lit.text();
    if (v.is_text()) return false;
    return v.as_number() == lit.as_number();
}

} // namespace

bool matches(const Event& e, const PredicateTerm& t) {
    const AttributeValue& v = e.attribute(t.attribute);
    switch (t.op) {
        case CmpOp::present: return !v.is_absent();
        case CmpOp::absent: return v.is_absent();
        case CmpOp::eq: return equality_compare(t.literal, v);
        case CmpOp::neq: return !v.is_absent() && !equality_compare(t.literal, v);
        default: return ordered_compare(t, v);
    }
}

bool matches(const Event& e, const FilterPredicate& p) {
    for (const PredicateTerm& t : p.terms)
        if (!matches(e, t)) return false;
    return true;
}

std::string to_string(const FilterPredicate& p) {
    std::string out;
    for (const PredicateTerm& t : p.terms) {
        if (!out.empty()) out += " and ";
        out += t.source;
    }
    return out.empty() ? "(none)" : out;
}

} // namespace pmenc
