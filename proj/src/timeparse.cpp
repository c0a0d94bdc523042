#include "pmenc/timeparse.hpp"
#include "pmenc/errors.hpp"

#include <cstdint>
#include <cstdio>

namespace pmenc {

namespace {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("bad timestamp '" + std::string(s) + "': " + what + " at offset " +
                         std::to_string(pos));
    }

    std::int64_t digits(int n, const char* what) {
        std::int64_t v = 0;
        for (int i = 0; i < n; ++i) {
            if (done() || s[pos] < '0' || s[pos] > '9') fail(std::string("expected ") + what);
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return v;
    }

    bool literal(char c) {
        if (!done() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

struct Parts {
    std::int64_t year = 1970;
    std::int64_t month = 1, day = 1;
    std::int64_t hour = 0, minute = 0, second = 0, millis = 0;
    std::int64_t offset_minutes = 0;

    Timestamp to_timestamp() const {
        if (month < 1 || month > 12) throw ParseError("month out of range");
        if (day < 1 || day > 31) throw ParseError("day out of range");
        if (hour > 23 || minute > 59 || second > 60) throw ParseError("time out of range");
        std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                            static_cast<unsigned>(day));
        std::int64_t ms = ((days * 24 + hour) * 60 + minute) * 60000 + second * 1000 + millis;
        ms -= offset_minutes * 60000;
        return Timestamp(ms);
    }
};

void parse_offset(Cursor& c, Parts& p) {
    if (c.done()) return;
    char ch = c.peek();
    if (ch == 'Z' || ch == 'z') {
        ++c.pos;
        return;
    }
    if (ch != '+' && ch != '-') c.fail("expected offset or end");
    int sign = ch == '-' ? -1 : 1;
    ++c.pos;
    std::int64_t oh = c.digits(2, "offset hours");
    c.literal(':');
    std::int64_t om = c.done() ? 0 : c.digits(2, "offset minutes");
    p.offset_minutes = sign * (oh * 60 + om);
}

} // namespace

Timestamp parse_iso8601(std::string_view text) {
    Cursor c{text};
    Parts p;
    p.year = c.digits(4, "year");
    if (!c.literal('-')) c.fail("expected '-'");
    p.month = c.digits(2, "month");
    if (!c.literal('-')) c.fail("expected '-'");
    p.day = c.digits(2, "day");
    if (!c.done()) {
        if (!c.literal('T') && !c.literal(' ') && !c.literal('t')) c.fail("expected 'T'");
        p.hour = c.digits(2, "hour");
        if (!c.literal(':')) c.fail("expected ':'");
        p.minute = c.digits(2, "minute");
        if (c.literal(':')) {
            p.second = c.digits(2, "second");
            if (c.literal('.')) {
                // take up to millisecond precision, skip the rest
                int scale = 100;
                while (!c.done() && c.peek() >= '0' && c.peek() <= '9') {
                    if (scale > 0) p.millis += (c.peek() - '0') * scale;
                    scale /= 10;
                    ++c.pos;
                }
            }
        }
        parse_offset(c, p);
    }
    if (!c.done()) c.fail("trailing characters");
    return p.to_timestamp();
}

Timestamp parse_timestamp(std::string_view text, std::string_view pattern) {
    Cursor c{text};
    Parts p;
    std::size_t i = 0;
    auto starts = [&](std::string_view tok) { return pattern.substr(i).substr(0, tok.size()) == tok; };
    while (i < pattern.size()) {
        if (starts("YYYY")) {
            p.year = c.digits(4, "year");
            i += 4;
        } else if (starts("MM")) {
            p.month = c.digits(2, "month");
            i += 2;
        } else if (starts("DD")) {
            p.day = c.digits(2, "day");
            i += 2;
        } else if (starts("hh")) {
            p.hour = c.digits(2, "hour");
            i += 2;
        } else if (starts("mm")) {
            p.minute = c.digits(2, "minute");
            i += 2;
        } else if (starts("ss")) {
            p.second = c.digits(2, "second");
            i += 2;
        } else if (starts(".SSS")) {
            if (!c.literal('.')) c.fail("expected '.'");
            p.millis = c.digits(3, "milliseconds");
            i += 4;
        } else if (starts("\xc2\xb1zz:zz") || starts("+zz:zz")) { // "±zz:zz"
            parse_offset(c, p);
            i += starts("+zz:zz") ? 6 : 7;
        } else {
            if (c.done() || c.peek() != pattern[i])
                c.fail(std::string("expected '") + pattern[i] + "'");
            ++c.pos;
            ++i;
        }
    }
    if (!c.done()) c.fail("trailing characters");
    return p.to_timestamp();
}

namespace {

void split_millis(Timestamp ts, std::int64_t& y, unsigned& mo, unsigned& d, std::int64_t& h,
                  std::int64_t& mi, std::int64_t& se, std::int64_t& ms) {
    std::int64_t total = ts.millis;
    std::int64_t days = total / 86400000;
    std::int64_t rem = total % 86400000;
    if (rem < 0) {
        rem += 86400000;
        --days;
    }
    civil_from_days(days, y, mo, d);
    h = rem / 3600000;
    rem %= 3600000;
    mi = rem / 60000;
    rem %= 60000;
    se = rem / 1000;
    ms = rem % 1000;
}

void pad(std::string& out, std::int64_t v, int width) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%0*lld", width, static_cast<long long>(v));
    out += buf;
}

} // namespace

std::string format_timestamp(Timestamp ts, std::string_view pattern) {
    std::int64_t y, h, mi, se, ms;
    unsigned mo, d;
    split_millis(ts, y, mo, d, h, mi, se, ms);
    std::string out;
    std::size_t i = 0;
    auto starts = [&](std::string_view tok) { return pattern.substr(i).substr(0, tok.size()) == tok; };
    while (i < pattern.size()) {
        if (starts("YYYY")) {
            pad(out, y, 4);
            i += 4;
        } else if (starts("MM")) {
            pad(out, mo, 2);
            i += 2;
        } else if (starts("DD")) {
            pad(out, d, 2);
            i += 2;
        } else if (starts("hh")) {
            pad(out, h, 2);
            i += 2;
        } else if (starts("mm")) {
            pad(out, mi, 2);
            i += 2;
        } else if (starts("ss")) {
            pad(out, se, 2);
            i += 2;
        } else if (starts(".SSS")) {
            out += '.';
            pad(out, ms, 3);
            i += 4;
        } else if (starts("\xc2\xb1zz:zz")) {
            out += "+00:00";
            i += 7;
        } else if (starts("+zz:zz")) {
            out += "+00:00";
            i += 6;
        } else {
            out += pattern[i];
            ++i;
        }
    }
    return out;
}

std::string format_iso8601(Timestamp ts) {
    return format_timestamp(ts, ts.millis % 1000 == 0 ? "YYYY-MM-DDThh:mm:ss"
                                                      : "YYYY-MM-DDThh:mm:ss.SSS");
}

} // namespace pmenc
