#ifndef NCHARVEST_NC_EXTRACT_HPP
#define NCHARVEST_NC_EXTRACT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ncharvest/corpus_index.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/ngram_table.hpp"
#include "ncharvest/query_gen.hpp"
#include "ncharvest/types.hpp"
#include "ncharvest/wordlists.hpp"

namespace ncharvest {

struct NCCandidate {
    NounCompound nc;
    Pattern source_pattern;
    std::uint64_t support = 1;

    friend bool operator==(const NCCandidate&, const NCCandidate&) = default;
};

enum class ScanDirection { before, after };

/// Scans away from the anchor span [anchor_begin, anchor_end) (window-relative
/// indices) until a delimiter or the window edge, and returns the noun
/// closest to the anchor inside that phrase.
inline std::optional<std::string> segment_argument(const Snippet& snippet, std::size_t anchor_begin,
                                                   std::size_t anchor_end, ScanDirection dir,
                                                   const Lexicon& lex, const WordLists& wl) {
    const auto& toks = snippet.tokens;
    if (anchor_begin > anchor_end || anchor_end > toks.size())
        throw Error("segment_argument: anchor outside snippet window");
    if (dir == ScanDirection::after) {
        for (std::size_t i = anchor_end; i < toks.size(); ++i) {
            if (wl.is_delimiter(toks[i])) break;
            if (lex.is_noun(toks[i])) return toks[i];
        }
    } else {
        for (std::size_t i = anchor_begin; i-- > 0;) {
            if (wl.is_delimiter(toks[i])) break;
            if (lex.is_noun(toks[i])) return toks[i];
        }
    }
    return std::nullopt;
}

/// The NC read off one step-1 match. The noun before "that" is the head and
/// the noun after the pattern the modifier, for both voices.
inline std::optional<NounCompound> extract_nc(const Snippet& snippet, const GeneratedQuery& q,
                                              const Lexicon& lex, const WordLists& wl) {
    const std::size_t a0 = snippet.local_match_start() + q.anchor_begin;
    const std::size_t a1 = snippet.local_match_start() + q.anchor_end;
    const auto noun_lemma = [&](const std::string& w) { return lex.lemmatize(w, PartOfSpeech::noun).lemma; };

    std::optional<Lemma> head;
    std::optional<Lemma> mod;
    if (q.free == FreeArgument::both || q.free == FreeArgument::head) {
        if (auto w = segment_argument(snippet, a0, a1, ScanDirection::before, lex, wl)) head = noun_lemma(*w);
    }
    if (q.free == FreeArgument::both || q.free == FreeArgument::modifier) {
        if (auto w = segment_argument(snippet, a0, a1, ScanDirection::after, lex, wl)) mod = noun_lemma(*w);
    }
    if (q.free == FreeArgument::head && q.source_nc) mod = q.source_nc->modifier;
    if (q.free == FreeArgument::modifier && q.source_nc) head = q.source_nc->head;
    if (!head || !mod) return std::nullopt;
    return NounCompound{*mod, *head};
}

/// Aggregates extractions of one step-1 batch. `results[i]` are the
/// snippets returned for `batch.queries[i]`. One count per matched text
/// position, so a span hit by two queries of the batch counts once.
inline std::vector<NCCandidate> form_candidates(const QueryBatch& batch,
                                                const std::vector<std::vector<Snippet>>& results,
                                                const Lexicon& lex, const WordLists& wl) {
    if (results.size() != batch.queries.size())
        throw Error("form_candidates: one snippet list per query expected");
    std::map<NounCompound, std::uint64_t> counts;
    std::set<std::pair<std::uint32_t, std::size_t>> seen;
    for (std::size_t i = 0; i < results.size(); ++i)
        for (const auto& s : results[i]) {
            if (!seen.insert({s.doc_id, s.match_start}).second) continue;
            if (auto nc = extract_nc(s, batch.queries[i], lex, wl)) ++counts[*nc];
        }
    std::vector<NCCandidate> out;
    out.reserve(counts.size());
    for (const auto& [nc, n] : counts) out.push_back({nc, batch.origin.pattern, n});
    return out;
}

/// Sums supports of candidates sharing (NC, pattern); output sorted.
inline std::vector<NCCandidate> merge_candidates(std::span<const NCCandidate> cands) {
    std::map<std::pair<NounCompound, Pattern>, std::uint64_t> m;
    for (const auto& c : cands) m[{c.nc, c.source_pattern}] += c.support;
    std::vector<NCCandidate> out;
    for (const auto& [k, n] : m) out.push_back({k.first, k.second, n});
    return out;
}

enum class NcCondition : std::uint8_t {
    already_known = 1,    // seed or extracted on an earlier iteration
    head_equals_modifier, // head and modifier are the same
    not_both_nouns,       // a component is not listed as a noun
    rare_bigram,          // "modifier head" below the n-gram threshold
    low_support,          // fewer than N extractions with the pattern
};

inline constexpr std::array<NcCondition, 5> kAllNcConditions{
    NcCondition::already_known, NcCondition::head_equals_modifier, NcCondition::not_both_nouns,
    NcCondition::rare_bigram, NcCondition::low_support};

struct NcFilterContext {
    const std::map<NounCompound, int>& history;
    const std::set<NounCompound>& seeds;
    const Lexicon& lexicon;
    const NGramTable& ngrams;
    std::uint64_t n_threshold = 5;
    std::uint64_t min_ngram_count = 100;
};

/// True when the candidate meets the removal condition.
inline bool violates(NcCondition c, const NCCandidate& cand, const NcFilterContext& ctx) {
    switch (c) {
        case NcCondition::already_known:
            return ctx.seeds.count(cand.nc) > 0 || ctx.history.count(cand.nc) > 0;
        case NcCondition::head_equals_modifier:
            return cand.nc.head == cand.nc.modifier;
        case NcCondition::not_both_nouns:
            return !ctx.lexicon.is_noun(cand.nc.modifier.str()) || !ctx.lexicon.is_noun(cand.nc.head.str());
        case NcCondition::rare_bigram:
            return ctx.ngrams.count({cand.nc.modifier.str(), cand.nc.head.str()}) < ctx.min_ngram_count;
        case NcCondition::low_support:
            return cand.support < ctx.n_threshold;
    }
    return true;
}

/// Candidates surviving every condition, checked in `order`.
inline std::vector<NCCandidate> filter_nc_candidates(std::span<const NCCandidate> cands,
                                                     const NcFilterContext& ctx,
                                                     std::span<const NcCondition> order = kAllNcConditions) {
    std::vector<NCCandidate> out;
    for (const auto& c : merge_candidates(cands)) {
        const bool rejected =
            std::any_of(order.begin(), order.end(), [&](NcCondition cond) { return violates(cond, c, ctx); });
        if (!rejected) out.push_back(c);
    }
    return out;
}

/// Accepted NCs, deduplicated and sorted.
inline std::vector<NounCompound> filter_ncs(std::span<const NCCandidate> cands, const NcFilterContext& ctx) {
    std::set<NounCompound> s;
    for (const auto& c : filter_nc_candidates(cands, ctx)) s.insert(c.nc);
    return {s.begin(), s.end()};
}

} // namespace ncharvest

#endif
