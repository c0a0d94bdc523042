#include "pmenc/csv.hpp"
#include "pmenc/errors.hpp"

namespace pmenc {

std::vector<std::vector<std::string>> read_csv(std::string_view bytes) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1, col = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        records.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < bytes.size(); ++i) {
        char c = bytes[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    field += '"';
                    ++i;
                    col += 2;
                } else {
                    in_quotes = false;
                    ++col;
                }
            } else {
                field += c;
                if (c == '\n') {
                    ++line;
                    col = 1;
                } else {
                    ++col;
                }
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started && !field.empty())
                    throw ParseError("quote inside unquoted field", line, col);
                in_quotes = true;
                field_started = true;
                ++col;
                break;
            case ',':
                end_field();
                ++col;
                break;
            case '\r':
                if (i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
                end_row();
                ++line;
                col = 1;
                break;
            case '\n':
                end_row();
                ++line;
                col = 1;
                break;
            default:
                field += c;
                field_started = true;
                ++col;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line, col);
    if (field_started || !row.empty()) end_row();
    return records;
}

std::string csv_escape(std::string_view field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_csv_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
}

} // namespace pmenc
