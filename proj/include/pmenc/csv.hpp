#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pmenc {

// RFC-4180 reader: quoted fields, "" escapes, LF or CRLF line ends.
// Records may span lines inside quotes. Returns one vector per record.
std::vector<std::vector<std::string>> read_csv(std::string_view bytes);

// Quotes a field only when it needs it.
std::string csv_escape(std::string_view field);

void append_csv_row(std::string& out, const std::vector<std::string>& fields);

} // namespace pmenc
