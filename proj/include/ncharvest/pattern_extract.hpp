#ifndef NCHARVEST_PATTERN_EXTRACT_HPP
#define NCHARVEST_PATTERN_EXTRACT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ncharvest/corpus_index.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/types.hpp"
#include "ncharvest/wordlists.hpp"

namespace ncharvest {

inline constexpr std::size_t kTopPatterns = 20;

/// A screened sentence inside a snippet window; all indices are
/// window-relative, `end` exclusive.
struct SentenceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t head_pos = 0;
    std::size_t mod_pos = 0;

    friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

/// Splits the window on terminal punctuation and keeps sentences that hold
/// a form of the head followed by a form of the modifier, where the words
/// after the modifier are non-empty and include at least one non-noun.
inline std::vector<SentenceSpan> split_and_screen(const Snippet& snippet, const NounCompound& nc,
                                                  const Lexicon& lex) {
    const auto& toks = snippet.tokens;
    const auto hf = lex.noun_forms(nc.head);
    const auto mf = lex.noun_forms(nc.modifier);
    const auto is_head = [&](const std::string& t) { return t == hf.singular || t == hf.plural; };
    const auto is_mod = [&](const std::string& t) { return t == mf.singular || t == mf.plural; };

    std::vector<SentenceSpan> out;
    std::size_t begin = 0;
    while (begin < toks.size()) {
        std::size_t end = begin;
        while (end < toks.size() && !text::is_sentence_terminal(toks[end])) ++end;
        if (end < toks.size()) ++end;  // include the terminator

        std::optional<std::size_t> last_head;
        for (std::size_t i = begin; i < end; ++i) {
            if (is_mod(toks[i]) && last_head) {
                const bool tail_ok = std::any_of(toks.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                                 toks.begin() + static_cast<std::ptrdiff_t>(end),
                                                 [&](const std::string& t) { return !lex.is_noun(t); });
                if (tail_ok) out.push_back({begin, end, *last_head, i});
                break;
            }
            if (is_head(toks[i])) last_head = i;
        }
        begin = end;
    }
    return out;
}

namespace detail {

inline bool is_be_form(std::string_view t) {
    return t == "be" || t == "is" || t == "are" || t == "was" || t == "were" || t == "been" ||
           t == "being" || t == "am";
}

inline bool is_have_form(std::string_view t) {
    return t == "have" || t == "has" || t == "had" || t == "having";
}

/// Lemma of `surface` preferring readings that fill `slot`.
inline std::optional<std::string> verb_lemma(const Lexicon& lex, const std::string& surface,
                                             std::optional<VerbSlot> slot) {
    const auto& rs = lex.verb_readings(surface);
    if (rs.empty()) return std::nullopt;
    if (slot) {
        for (const auto& r : rs)
            if (r.has(*slot)) return r.lemma;
        return std::nullopt;
    }
    for (const auto& r : rs)
        if (!r.has(VerbSlot::participle) || r.has(VerbSlot::past) || r.has(VerbSlot::base)) return r.lemma;
    return rs.front().lemma;
}

} // namespace detail

/// Shallow verb-phrase extraction between the target nouns (`head_pos` <
/// `mod_pos`, indices into `tokens`). Rule cascade:
///  - before the verb: relative pronouns, commas, modals, do-support and
///    have/be auxiliaries are skipped; a be-form followed by a participle
///    marks the passive;
///  - exactly one main verb; a second verb, a noun, a conjunction or a
///    clause-breaking punctuation mark rejects the sentence;
///  - adjectives and participles may sit between the verb and the
///    preposition, nouns may not;
///  - after the preposition group only determiners, adjectives and
///    participles may precede the modifier.
/// Words unknown to the lexicon (mostly adverbs) are skipped everywhere.
inline std::optional<Pattern> extract_pattern(std::span<const std::string> tokens, std::size_t head_pos,
                                              std::size_t mod_pos, const Lexicon& lex, const WordLists& wl) {
    if (head_pos >= mod_pos || mod_pos >= tokens.size())
        throw Error("extract_pattern: head must precede modifier inside the sentence");

    enum class Phase { pre_verb, after_verb, preposition, post };
    Phase phase = Phase::pre_verb;
    bool passive_aux = false;
    bool copula = false;
    std::string verb;
    Voice voice = Voice::active;
    std::vector<std::string> preps;

    const auto known = [&](const std::string& t) {
        return lex.find(t) != nullptr || lex.is_verb_form(t) || lex.is_noun(t) || wl.is_delimiter(t) ||
               wl.is_determiner(t) || wl.is_modal(t) || wl.is_auxiliary(t);
    };
    const auto is_filler = [&](const std::string& t) { return !text::is_punctuation(t) && !known(t); };
    // Next token after i that is not filler, inside the region.
    const auto next_content = [&](std::size_t i) -> std::optional<std::string> {
        for (std::size_t j = i + 1; j < mod_pos; ++j)
            if (!is_filler(tokens[j])) return tokens[j];
        return std::nullopt;
    };
    const auto noun_only = [&](const std::string& t) {
        return lex.is_noun(t) && !lex.is_verb_form(t) && !lex.is_adjective(t);
    };

    for (std::size_t i = head_pos + 1; i < mod_pos; ++i) {
        const std::string& t = tokens[i];
        if (is_filler(t)) continue;
        if (text::is_punctuation(t)) {
            if (t == "," && phase == Phase::pre_verb) continue;
            return std::nullopt;
        }
        switch (phase) {
            case Phase::pre_verb: {
                if (wl.is_relative_pronoun(t) || wl.is_modal(t) || wl.is_auxiliary(t)) continue;
                if (detail::is_have_form(t)) {
                    const auto nx = next_content(i);
                    if (nx && (*nx == "been" || lex.is_past_participle(*nx))) continue;
                }
                if (detail::is_be_form(t)) {
                    const auto nx = next_content(i);
                    if (nx && (*nx == "been" || *nx == "being" || lex.is_past_participle(*nx))) {
                        passive_aux = true;
                        continue;
                    }
                    if (nx && detail::is_be_form(*nx)) continue;
                    copula = true;
                    phase = Phase::after_verb;
                    continue;
                }
                if (lex.is_verb_form(t)) {
                    const auto lemma = passive_aux ? detail::verb_lemma(lex, t, VerbSlot::participle)
                                                   : detail::verb_lemma(lex, t, std::nullopt);
                    if (!lemma) return std::nullopt;
                    verb = *lemma;
                    voice = passive_aux ? Voice::passive : Voice::active;
                    phase = Phase::after_verb;
                    continue;
                }
                return std::nullopt;  // noun, adjective, preposition... before any verb
            }
            case Phase::after_verb: {
                if (wl.is_preposition(t)) {
                    preps.push_back(t);
                    phase = Phase::preposition;
                    continue;
                }
                if (wl.is_determiner(t)) {
                    phase = Phase::post;
                    continue;
                }
                if (lex.is_adjective(t) && !noun_only(t)) continue;
                if (lex.is_past_participle(t)) continue;
                return std::nullopt;  // second verb, noun, conjunction...
            }
            case Phase::preposition: {
                if (wl.is_preposition(t)) {
                    preps.push_back(t);
                    continue;
                }
                phase = Phase::post;
                [[fallthrough]];
            }
            case Phase::post: {
                if (wl.is_determiner(t)) continue;
                if (lex.is_adjective(t) && !noun_only(t)) continue;
                if (lex.is_past_participle(t) && !lex.is_noun(t)) continue;
                return std::nullopt;
            }
        }
    }
    if (copula || verb.empty()) return std::nullopt;
    try {
        return Pattern(Lemma(verb), voice, text::join(preps));
    } catch (const Error&) {
        return std::nullopt;
    }
}

struct PatternCandidate {
    Pattern pattern;
    std::map<NounCompound, std::uint64_t> nc_support;

    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (const auto& [nc, c] : nc_support) n += c;
        return n;
    }
    std::size_t distinct_ncs() const { return nc_support.size(); }

    friend bool operator==(const PatternCandidate&, const PatternCandidate&) = default;
};

/// Extracts and aggregates patterns from step-2 snippets of one NC.
inline void collect_patterns(const Snippet& snippet, const NounCompound& nc, const Lexicon& lex,
                             const WordLists& wl, std::map<Pattern, PatternCandidate>& into) {
    for (const auto& s : split_and_screen(snippet, nc, lex)) {
        const std::span<const std::string> sentence(snippet.tokens);
        if (auto p = extract_pattern(sentence, s.head_pos, s.mod_pos, lex, wl)) {
            auto& cand = into[*p];
            cand.pattern = *p;
            ++cand.nc_support[nc];
        }
    }
}

inline std::vector<PatternCandidate> merge_pattern_candidates(std::span<const PatternCandidate> cands) {
    std::map<Pattern, PatternCandidate> m;
    for (const auto& c : cands) {
        auto& dst = m[c.pattern];
        dst.pattern = c.pattern;
        for (const auto& [nc, n] : c.nc_support) dst.nc_support[nc] += n;
    }
    std::vector<PatternCandidate> out;
    for (auto& [p, c] : m) out.push_back(std::move(c));
    return out;
}

struct PatternFilterContext {
    const std::map<Pattern, int>& history;
    const std::set<Pattern>& seeds;
    std::uint64_t n_threshold = 5;
    std::uint64_t m_threshold = 50;
    std::size_t top_k = kTopPatterns;
};

/// Rules in order: drop seeds and earlier patterns; keep the top_k by total
/// frequency (ties by pattern order); drop patterns with fewer than N
/// occurrences or fewer than M distinct NCs.
inline std::vector<PatternCandidate> filter_pattern_candidates(std::span<const PatternCandidate> cands,
                                                               const PatternFilterContext& ctx) {
    std::vector<PatternCandidate> pool;
    for (auto& c : merge_pattern_candidates(cands))
        if (!ctx.seeds.count(c.pattern) && !ctx.history.count(c.pattern)) pool.push_back(std::move(c));

    std::stable_sort(pool.begin(), pool.end(), [](const PatternCandidate& a, const PatternCandidate& b) {
        const auto ta = a.total();
        const auto tb = b.total();
        if (ta != tb) return ta > tb;
        return a.pattern < b.pattern;
    });
    if (pool.size() > ctx.top_k) pool.resize(ctx.top_k);

    std::vector<PatternCandidate> out;
    for (auto& c : pool)
        if (c.total() >= ctx.n_threshold && c.distinct_ncs() >= ctx.m_threshold) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const PatternCandidate& a, const PatternCandidate& b) { return a.pattern < b.pattern; });
    return out;
}

inline std::vector<Pattern> filter_patterns(std::span<const PatternCandidate> cands,
                                            const PatternFilterContext& ctx) {
    std::vector<Pattern> out;
    for (const auto& c : filter_pattern_candidates(cands, ctx)) out.push_back(c.pattern);
    return out;
}

} // namespace ncharvest

#endif
