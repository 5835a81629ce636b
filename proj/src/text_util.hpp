#pragma once

// Line/token helpers shared by the text-format readers.

#include "medgraph/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace medgraph::detail {

struct Line {
    std::size_t number; // 1-based, for messages
    std::vector<std::string_view> tokens;
};

// Splits into whitespace-separated tokens per line, dropping blank lines and
// lines whose first token starts with `comment`.
inline std::vector<Line> tokenize(std::string_view text, char comment = '#') {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        auto nl = text.find('\n');
        std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
                ++i;
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])))
                ++j;
            if (j > i)
                line.tokens.push_back(raw.substr(i, j - i));
            i = j;
        }
        if (line.tokens.empty() || line.tokens.front().front() == comment)
            continue;
        lines.push_back(std::move(line));
    }
    return lines;
}

inline std::uint64_t parse_count(std::string_view tok, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line) + ": expected a nonnegative integer, got '" +
                         std::string(tok) + "'");
    return value;
}

inline std::int64_t parse_int(std::string_view tok, std::size_t line) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" +
                         std::string(tok) + "'");
    return value;
}

inline void expect_tokens(const Line& line, std::size_t count) {
    if (line.tokens.size() != count)
        throw ParseError("line " + std::to_string(line.number) + ": expected " +
                         std::to_string(count) + " fields, got " +
                         std::to_string(line.tokens.size()));
}

} // namespace medgraph::detail
