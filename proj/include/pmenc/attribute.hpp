#pragma once

#include "pmenc/errors.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace pmenc {

// Epoch milliseconds, UTC. Event ordering is defined on this.
struct Timestamp {
    std::int64_t millis = 0;

    Timestamp() = default;
    explicit Timestamp(std::int64_t ms) : millis(ms) {
        if (ms < 0) throw DataError("timestamp before 1970-01-01 is not representable");
    }

    auto operator<=>(const Timestamp&) const = default;
};

// One attribute value. `absent` is a value in its own right: it is distinct
// from the empty string and from 0.
class AttributeValue {
public:
    enum class Kind { absent, text, integer, real, timestamp };

    AttributeValue() : v_(Absent{}) {}
    AttributeValue(std::string s) : v_(std::move(s)) {}
    AttributeValue(const char* s) : v_(std::string(s)) {}
    AttributeValue(std::int64_t i) : v_(i) {}
    AttributeValue(int i) : v_(static_cast<std::int64_t>(i)) {}
    AttributeValue(double d) : v_(d) {}
    AttributeValue(Timestamp t) : v_(t) {}

    static const AttributeValue& absent();

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_absent() const { return kind() == Kind::absent; }
    bool is_text() const { return kind() == Kind::text; }
    bool is_timestamp() const { return kind() == Kind::timestamp; }
    // integer, real or timestamp: anything with a usable numeric magnitude
    bool is_numeric() const {
        return kind() == Kind::integer || kind() == Kind::real || kind() == Kind::timestamp;
    }

    const std::string& text() const { return std::get<std::string>(v_); }
    std::int64_t integer() const { return std::get<std::int64_t>(v_); }
    double real() const { return std::get<double>(v_); }
    Timestamp timestamp() const { return std::get<Timestamp>(v_); }

    // Numeric magnitude: integer/real as-is, timestamp as epoch ms.
    double as_number() const {
        switch (kind()) {
            case Kind::integer: return static_cast<double>(integer());
            case Kind::real: return real();
            case Kind::timestamp: return static_cast<double>(timestamp().millis);
            default: throw DataError("attribute value is not numeric");
        }
    }

    // Canonical text rendering, used for dimension labels and CSV cells.
    std::string render() const;

    bool operator==(const AttributeValue& o) const { return v_ == o.v_; }
    bool operator!=(const AttributeValue& o) const { return !(*this == o); }

private:
    struct Absent {
        bool operator==(const Absent&) const { return true; }
    };
    std::variant<Absent, std::string, std::int64_t, double, Timestamp> v_;
};

// Shortest decimal that round-trips the double.
std::string format_double(double v);

} // namespace pmenc
