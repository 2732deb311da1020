#ifndef NCHARVEST_TEXT_HPP
#define NCHARVEST_TEXT_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ncharvest/types.hpp"

namespace ncharvest::text {

inline char lower_ascii(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower_ascii);
    return out;
}

inline std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && ws(s.back())) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Splits on runs of spaces; empty fields are dropped.
inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

template <typename Range>
std::string join(const Range& parts, std::string_view sep = " ") {
    std::string out;
    bool first = true;
    for (const auto& p : parts) {
        if (!first) out += sep;
        out += p;
        first = false;
    }
    return out;
}

inline bool is_word_char(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

/// True for tokens consisting only of punctuation characters.
inline bool is_punctuation(std::string_view tok) {
    if (tok.empty()) return false;
    return std::none_of(tok.begin(), tok.end(),
                        [](char c) { return is_word_char(static_cast<unsigned char>(c)); });
}

inline bool is_sentence_terminal(std::string_view tok) {
    return tok == "." || tok == "!" || tok == "?";
}

/// Lowercasing tokenizer. Words are runs of alphanumerics (and non-ASCII
/// bytes) with internal apostrophes or hyphens; every other non-space
/// character becomes its own token.
inline std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    const auto flush = [&] {
        if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (is_word_char(c)) {
            cur.push_back(lower_ascii(static_cast<char>(c)));
        } else if ((c == '\'' || c == '-') && !cur.empty() && i + 1 < s.size() &&
                   is_word_char(static_cast<unsigned char>(s[i + 1]))) {
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
            if (!std::isspace(c)) out.emplace_back(1, static_cast<char>(c));
        }
    }
    flush();
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Reads lines, dropping a trailing '\r'.
inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

inline bool is_comment_or_blank(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

} // namespace ncharvest::text

#endif
