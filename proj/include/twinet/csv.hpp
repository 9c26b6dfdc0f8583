#pragma once

#include <string>
#include <string_view>

namespace twinet::csv {

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are wrapped in
/// double quotes with embedded quotes doubled. Everything else passes through.
inline std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace twinet::csv
