#ifndef NCHARVEST_SEEDS_HPP
#define NCHARVEST_SEEDS_HPP

#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncharvest/lexicon.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

struct SeedPair {
    NCPatternPair pair;
    std::uint64_t support = 1;
};

/// Initial NCs, patterns and NC-pattern pairs.
struct SeedSet {
    std::vector<NounCompound> ncs;
    std::vector<Pattern> patterns;
    std::vector<SeedPair> pairs;

    std::set<NounCompound> nc_set() const { return {ncs.begin(), ncs.end()}; }
    std::set<Pattern> pattern_set() const { return {patterns.begin(), patterns.end()}; }

    /// Problems that make the seeds unusable with `lex` (unknown nouns or
    /// verbs), one message per problem.
    std::vector<std::string> check_lexicon(const Lexicon& lex) const {
        std::vector<std::string> out;
        for (const auto& nc : ncs)
            for (const auto* n : {&nc.modifier, &nc.head})
                if (!lex.has_lemma(n->str(), PartOfSpeech::noun))
                    out.push_back("seed NC '" + nc.str() + "': '" + n->str() + "' is not a noun in the lexicon");
        for (const auto& p : patterns)
            if (!lex.has_lemma(p.verb.str(), PartOfSpeech::verb))
                out.push_back("seed pattern '" + p.key() + "': verb not in the lexicon");
        return out;
    }
};

namespace detail {

template <class F>
void for_each_row(std::string_view content, const std::string& source, F&& f) {
    std::size_t lineno = 0;
    for (const auto& raw : text::split(content, '\n')) {
        ++lineno;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (text::is_comment_or_blank(line)) continue;
        auto cols = text::split(line, '\t');
        for (auto& c : cols) c = std::string(text::trim(c));
        f(cols, source + ":" + std::to_string(lineno) + ": ");
    }
}

inline Pattern pattern_from_columns(const std::string& verb, const std::string& voice, const std::string& prep,
                                    const std::string& where) {
    try {
        return Pattern(Lemma(text::to_lower(verb)), parse_voice(voice), prep == "-" ? "" : text::to_lower(prep));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(where + e.what());
    }
}

inline NounCompound nc_from_columns(const std::string& mod, const std::string& head, const std::string& where) {
    try {
        return NounCompound{Lemma(text::to_lower(mod)), Lemma(text::to_lower(head))};
    } catch (const Error& e) {
        throw ParseError(where + e.what());
    }
}

} // namespace detail

/// `modifier<TAB>head` rows.
inline std::vector<NounCompound> parse_seed_ncs(std::string_view content, const std::string& source) {
    std::vector<NounCompound> out;
    std::set<NounCompound> seen;
    detail::for_each_row(content, source, [&](const std::vector<std::string>& c, const std::string& where) {
        if (c.size() != 2) throw ParseError(where + "expected modifier<TAB>head");
        auto nc = detail::nc_from_columns(c[0], c[1], where);
        if (nc.modifier == nc.head) throw ParseError(where + "modifier equals head");
        if (!seen.insert(nc).second) throw ParseError(where + "duplicate seed NC '" + nc.str() + "'");
        out.push_back(std::move(nc));
    });
    return out;
}

/// `verb<TAB>voice<TAB>preposition` rows, '-' for no preposition.
inline std::vector<Pattern> parse_seed_patterns(std::string_view content, const std::string& source) {
    std::vector<Pattern> out;
    std::set<Pattern> seen;
    detail::for_each_row(content, source, [&](const std::vector<std::string>& c, const std::string& where) {
        if (c.size() != 3) throw ParseError(where + "expected verb<TAB>voice<TAB>preposition");
        auto p = detail::pattern_from_columns(c[0], c[1], c[2], where);
        if (!seen.insert(p).second) throw ParseError(where + "duplicate seed pattern '" + p.key() + "'");
        out.push_back(std::move(p));
    });
    return out;
}

/// `modifier<TAB>head<TAB>verb<TAB>voice<TAB>preposition[<TAB>support]`
/// rows; every pair must name a listed NC and a listed pattern.
inline std::vector<SeedPair> parse_seed_pairs(std::string_view content, const std::string& source,
                                              const std::vector<NounCompound>& ncs,
                                              const std::vector<Pattern>& patterns) {
    const std::set<NounCompound> nc_set(ncs.begin(), ncs.end());
    const std::set<Pattern> pat_set(patterns.begin(), patterns.end());
    std::vector<SeedPair> out;
    std::set<NCPatternPair> seen;
    detail::for_each_row(content, source, [&](const std::vector<std::string>& c, const std::string& where) {
        if (c.size() != 5 && c.size() != 6)
            throw ParseError(where + "expected modifier<TAB>head<TAB>verb<TAB>voice<TAB>preposition[<TAB>support]");
        SeedPair sp;
        sp.pair.nc = detail::nc_from_columns(c[0], c[1], where);
        sp.pair.pattern = detail::pattern_from_columns(c[2], c[3], c[4], where);
        if (c.size() == 6) {
            const auto& s = c[5];
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), sp.support);
            if (ec != std::errc{} || p != s.data() + s.size() || sp.support == 0)
                throw ParseError(where + "support must be a positive integer");
        }
        if (!nc_set.count(sp.pair.nc)) throw ParseError(where + "NC '" + sp.pair.nc.str() + "' is not a seed NC");
        if (!pat_set.count(sp.pair.pattern))
            throw ParseError(where + "pattern '" + sp.pair.pattern.key() + "' is not a seed pattern");
        if (!seen.insert(sp.pair).second) throw ParseError(where + "duplicate seed pair");
        out.push_back(std::move(sp));
    });
    return out;
}

inline SeedSet load_seeds(const std::string& ncs_path, const std::string& patterns_path,
                          const std::string& pairs_path) {
    SeedSet s;
    s.ncs = parse_seed_ncs(text::read_file(ncs_path), ncs_path);
    s.patterns = parse_seed_patterns(text::read_file(patterns_path), patterns_path);
    s.pairs = parse_seed_pairs(text::read_file(pairs_path), pairs_path, s.ncs, s.patterns);
    if (s.ncs.empty()) throw ParseError(ncs_path + ": no seed NCs");
    if (s.patterns.empty()) throw ParseError(patterns_path + ": no seed patterns");
    return s;
}

} // namespace ncharvest

#endif
