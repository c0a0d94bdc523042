#include "pmenc/attribute.hpp"
#include "pmenc/timeparse.hpp"

#include <charconv>

namespace pmenc {

const AttributeValue& AttributeValue::absent() {
    static const AttributeValue a;
    return a;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string AttributeValue::render() const {
    switch (kind()) {
        case Kind::absent: return "";
        case Kind::text: return text();
        case Kind::integer: return std::to_string(integer());
        case Kind::real: return format_double(real());
        case Kind::timestamp: return format_iso8601(timestamp());
    }
    return "";
}

} // namespace pmenc
