#ifndef NCHARVEST_QUERY_GEN_HPP
#define NCHARVEST_QUERY_GEN_HPP

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncharvest/corpus_index.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

enum class StrategyKind { loose, strict, nc_only_strict };

inline std::string_view to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::loose: return "loose";
        case StrategyKind::strict: return "strict";
        case StrategyKind::nc_only_strict: return "nc_only_strict";
    }
    return "?";
}

inline StrategyKind parse_strategy(std::string_view s) {
    if (s == "loose") return StrategyKind::loose;
    if (s == "strict") return StrategyKind::strict;
    if (s == "nc_only_strict") return StrategyKind::nc_only_strict;
    throw Error("unknown strategy '" + std::string(s) + "' (expected loose, strict or nc_only_strict)");
}

/// Step-1 strategy. Under nc_only_strict only the initial seed patterns
/// may be instantiated.
struct Strategy {
    StrategyKind kind = StrategyKind::strict;
    std::set<Pattern> seed_patterns;

    bool fixes_a_noun() const { return kind != StrategyKind::loose; }
    bool grows_patterns() const { return kind != StrategyKind::nc_only_strict; }

    bool allows(const Pattern& p) const {
        return kind != StrategyKind::nc_only_strict || seed_patterns.count(p) > 0;
    }
};

enum class HarvestStep { nc_extraction, pattern_extraction };

inline std::string_view to_string(HarvestStep s) {
    return s == HarvestStep::nc_extraction ? "nc_extraction" : "pattern_extraction";
}

/// Which side(s) of a step-1 match hold the noun(s) to extract.
enum class FreeArgument { both, head, modifier, none };

/// A concrete query plus what the extractor needs to read its matches.
/// `anchor_begin`/`anchor_end` delimit the "that PATTERN" slots.
struct GeneratedQuery {
    PhraseQuery query;
    FreeArgument free = FreeArgument::none;
    std::size_t anchor_begin = 0;
    std::size_t anchor_end = 0;
    std::optional<NounCompound> source_nc;  // NC whose noun is fixed, if any
};

struct QueryOrigin {
    Pattern pattern;                  // unset for step-2 batches
    std::optional<NounCompound> nc;   // set for step-2 batches
    HarvestStep step = HarvestStep::nc_extraction;
};

struct QueryBatch {
    QueryOrigin origin;
    std::vector<GeneratedQuery> queries;

    std::vector<PhraseQuery> phrase_queries() const {
        std::vector<PhraseQuery> out;
        out.reserve(queries.size());
        for (const auto& q : queries) out.push_back(q.query);
        return out;
    }
    std::size_t size() const { return queries.size(); }
};

namespace detail {

inline void push_unique(QueryBatch& b, std::set<std::string>& seen, GeneratedQuery q) {
    if (seen.insert(q.query.str()).second) b.queries.push_back(std::move(q));
}

inline std::vector<std::string> distinct_forms(const NounForms& f) {
    if (f.singular == f.plural) return {f.singular};
    return {f.singular, f.plural};
}

} // namespace detail

/// Step-1 queries for one pattern.
///
/// loose:  `* that SURFACE *` for every inflection of the pattern.
/// strict: for every seed NC, `HEAD that SURFACE *` and `* that SURFACE MOD`
///         over every inflection and both number forms of the fixed noun.
inline QueryBatch step1_queries(const Lexicon& lex, const Pattern& pattern, const Strategy& strategy,
                                const std::vector<NounCompound>& seed_ncs) {
    if (!strategy.allows(pattern))
        throw Error("pattern '" + lex.display(pattern) + "' is not an initial seed; rejected under " +
                    std::string(to_string(strategy.kind)));
    if (strategy.fixes_a_noun() && seed_ncs.empty())
        throw Error("strict strategies need at least one seed NC for pattern '" + lex.display(pattern) + "'");

    QueryBatch batch;
    batch.origin = {pattern, std::nullopt, HarvestStep::nc_extraction};
    std::set<std::string> seen;
    const auto surfaces = lex.inflect_pattern(pattern);

    const auto make = [](std::vector<QuerySlot> slots, FreeArgument free, std::size_t surface_len,
                         std::optional<NounCompound> nc) {
        GeneratedQuery g;
        g.query = PhraseQuery(std::move(slots));
        g.free = free;
        g.anchor_begin = 1;
        g.anchor_end = 2 + surface_len;
        g.source_nc = std::move(nc);
        return g;
    };
    const auto pattern_slots = [](const InflectedPattern& ip) {
        std::vector<QuerySlot> s{QuerySlot::literal("that")};
        for (const auto& w : ip.surface) s.push_back(QuerySlot::literal(w));
        return s;
    };

    if (strategy.kind == StrategyKind::loose) {
        for (const auto& ip : surfaces) {
            std::vector<QuerySlot> slots{QuerySlot::any()};
            for (auto& s : pattern_slots(ip)) slots.push_back(std::move(s));
            slots.push_back(QuerySlot::any());
            detail::push_unique(batch, seen, make(std::move(slots), FreeArgument::both, ip.surface.size(), std::nullopt));
        }
        return batch;
    }

    for (const auto& nc : seed_ncs) {
        for (const auto& head : detail::distinct_forms(lex.noun_forms(nc.head))) {
            for (const auto& ip : surfaces) {
                std::vector<QuerySlot> slots{QuerySlot::literal(head)};
                for (auto& s : pattern_slots(ip)) slots.push_back(std::move(s));
                slots.push_back(QuerySlot::any());
                detail::push_unique(batch, seen, make(std::move(slots), FreeArgument::modifier, ip.surface.size(), nc));
            }
        }
        for (const auto& mod : detail::distinct_forms(lex.noun_forms(nc.modifier))) {
            for (const auto& ip : surfaces) {
                std::vector<QuerySlot> slots{QuerySlot::any()};
                for (auto& s : pattern_slots(ip)) slots.push_back(std::move(s));
                slots.push_back(QuerySlot::literal(mod));
                detail::push_unique(batch, seen, make(std::move(slots), FreeArgument::head, ip.surface.size(), nc));
            }
        }
    }
    return batch;
}

inline constexpr std::array<std::string_view, 4> kRelativeMarkers{"that", "which", "who", ""};
inline constexpr std::size_t kMaxStep2Wildcards = 6;

/// Step-2 queries `HEAD THAT? *{1..6} MOD`, THAT? in {that, which, who,
/// nothing}, over both number forms of head and modifier. 96 queries per
/// NC before collapsing identical noun forms.
inline QueryBatch step2_queries(const Lexicon& lex, const NounCompound& nc) {
    if (nc.modifier == nc.head) throw Error("invalid NC: modifier equals head");
    QueryBatch batch;
    batch.origin.step = HarvestStep::pattern_extraction;
    batch.origin.nc = nc;
    std::set<std::string> seen;
    const auto heads = detail::distinct_forms(lex.noun_forms(nc.head));
    const auto mods = detail::distinct_forms(lex.noun_forms(nc.modifier));
    for (const auto& head : heads) {
        for (const auto marker : kRelativeMarkers) {
            for (std::size_t k = 1; k <= kMaxStep2Wildcards; ++k) {
                for (const auto& mod : mods) {
                    std::vector<QuerySlot> slots{QuerySlot::literal(head)};
                    if (!marker.empty()) slots.push_back(QuerySlot::literal(std::string(marker)));
                    for (std::size_t i = 0; i < k; ++i) slots.push_back(QuerySlot::any());
                    slots.push_back(QuerySlot::literal(mod));
                    GeneratedQuery g;
                    g.query = PhraseQuery(std::move(slots));
                    g.free = FreeArgument::none;
                    g.source_nc = nc;
                    detail::push_unique(batch, seen, std::move(g));
                }
            }
        }
    }
    return batch;
}

} // namespace ncharvest

#endif
