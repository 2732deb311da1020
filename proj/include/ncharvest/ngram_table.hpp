#ifndef NCHARVEST_NGRAM_TABLE_HPP
#define NCHARVEST_NGRAM_TABLE_HPP

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncharvest/corpus_index.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

inline constexpr std::size_t kMaxNGramOrder = 5;

/// Token sequence (1-5 tokens) -> count, in the Web1T TSV layout
/// `token[ token...]<TAB>count`. Absent n-grams count 0.
class NGramTable {
public:
    std::uint64_t count(std::span<const std::string> tokens) const {
        check_order(tokens.size());
        const auto it = counts_.find(text::join(tokens));
        return it == counts_.end() ? 0 : it->second;
    }

    std::uint64_t count(std::initializer_list<std::string> tokens) const {
        const std::vector<std::string> v(tokens);
        return count(std::span<const std::string>(v));
    }

    void add(std::span<const std::string> tokens, std::uint64_t n) {
        check_order(tokens.size());
        if (n == 0) throw Error("n-gram counts must be positive");
        counts_[text::join(tokens)] += n;
    }

    void add(std::initializer_list<std::string> tokens, std::uint64_t n) {
        const std::vector<std::string> v(tokens);
        add(std::span<const std::string>(v), n);
    }

    std::size_t size() const { return counts_.size(); }

    static NGramTable parse(std::string_view content, const std::string& source = "<ngrams>") {
        NGramTable t;
        std::size_t lineno = 0;
        for (const auto& raw : text::split(content, '\n')) {
            ++lineno;
            std::string_view line = raw;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;
            const auto where = source + ":" + std::to_string(lineno) + ": ";
            const auto tab = line.rfind('\t');
            if (tab == std::string_view::npos) throw ParseError(where + "expected n-gram<TAB>count");
            const auto toks = text::split_words(line.substr(0, tab));
            if (toks.empty() || toks.size() > kMaxNGramOrder)
                throw ParseError(where + "n-gram must have 1 to 5 tokens");
            const auto num = text::trim(line.substr(tab + 1));
            std::uint64_t n = 0;
            const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
            if (ec != std::errc{} || p != num.data() + num.size() || n == 0)
                throw ParseError(where + "count must be a positive integer");
            std::vector<std::string> lowered;
            for (const auto& tk : toks) lowered.push_back(text::to_lower(tk));
            t.counts_[text::join(lowered)] += n;
        }
        return t;
    }

    static NGramTable load(const std::string& path) { return parse(text::read_file(path), path); }

    /// Lines sorted by n-gram text, so equal tables serialise identically.
    std::string serialize() const {
        std::vector<std::pair<std::string_view, std::uint64_t>> rows(counts_.begin(), counts_.end());
        std::sort(rows.begin(), rows.end());
        std::string out;
        for (const auto& [k, v] : rows) {
            out += k;
            out += '\t';
            out += std::to_string(v);
            out += '\n';
        }
        return out;
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path + "'");
        out << serialize();
    }

    /// Counts every contiguous n-gram of order 1..max_order within documents.
    static NGramTable from_corpus(const CorpusIndex& index, std::size_t max_order) {
        check_order(max_order);
        NGramTable t;
        for (std::size_t d = 0; d < index.document_count(); ++d) {
            const auto toks = index.document_tokens(d);
            for (std::size_t i = 0; i < toks.size(); ++i) {
                std::string key;
                for (std::size_t n = 1; n <= max_order && i + n <= toks.size(); ++n) {
                    if (n > 1) key += ' ';
                    key += toks[i + n - 1];
                    ++t.counts_[key];
                }
            }
        }
        return t;
    }

private:
    static void check_order(std::size_t n) {
        if (n < 1 || n > kMaxNGramOrder)
            throw Error("n-gram length must be between 1 and 5, got " + std::to_string(n));
    }

    std::unordered_map<std::string, std::uint64_t> counts_;
};

} // namespace ncharvest

#endif
