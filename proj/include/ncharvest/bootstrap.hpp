#ifndef NCHARVEST_BOOTSTRAP_HPP
#define NCHARVEST_BOOTSTRAP_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ncharvest/corpus_index.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/nc_extract.hpp"
#include "ncharvest/ngram_table.hpp"
#include "ncharvest/pattern_extract.hpp"
#include "ncharvest/query_gen.hpp"
#include "ncharvest/seeds.hpp"
#include "ncharvest/types.hpp"
#include "ncharvest/wordlists.hpp"

namespace ncharvest {

struct BootstrapConfig {
    StrategyKind strategy = StrategyKind::strict;
    std::uint64_t n_threshold = 5;
    std::uint64_t m_threshold = 50;
    int max_iterations = 3;
    std::size_t top_k_patterns = kTopPatterns;
    std::size_t top_k_nc_seeds = 10;
    std::size_t snippet_cap = kDefaultSnippetCap;
    std::uint64_t min_ngram_count = 100;
    unsigned workers = 1;

    /// Empty when valid; otherwise one message per offending field.
    std::vector<std::string> problems() const {
        std::vector<std::string> out;
        if (n_threshold == 0) out.push_back("n_threshold must be positive");
        if (m_threshold == 0) out.push_back("m_threshold must be positive");
        if (max_iterations < 0) out.push_back("max_iterations must not be negative");
        if (top_k_patterns == 0) out.push_back("top_k_patterns must be positive");
        if (top_k_nc_seeds == 0) out.push_back("top_k_nc_seeds must be positive");
        if (snippet_cap == 0) out.push_back("snippet_cap must be positive");
        if (min_ngram_count == 0) out.push_back("min_ngram_count must be positive");
        if (workers == 0) out.push_back("workers must be positive");
        return out;
    }
};

/// Accepted NCs and patterns with the iteration that found them (0 for
/// seeds), plus the support of every NC-pattern pair.
struct HarvestState {
    std::map<NounCompound, int> accepted_ncs;
    std::map<Pattern, int> active_patterns;
    std::map<NCPatternPair, std::uint64_t> pairs;
    int iteration = 0;

    static HarvestState from_seeds(const SeedSet& seeds) {
        HarvestState s;
        for (const auto& nc : seeds.ncs) s.accepted_ncs.emplace(nc, 0);
        for (const auto& p : seeds.patterns) s.active_patterns.emplace(p, 0);
        for (const auto& sp : seeds.pairs) s.pairs[sp.pair] += sp.support;
        return s;
    }

    /// pattern -> NC -> support.
    std::map<Pattern, std::map<NounCompound, std::uint64_t>> support_by_pattern() const {
        std::map<Pattern, std::map<NounCompound, std::uint64_t>> out;
        for (const auto& [pair, n] : pairs) out[pair.pattern][pair.nc] += n;
        return out;
    }

    /// Empty when every pair references accepted elements.
    std::vector<std::string> inconsistencies() const {
        std::vector<std::string> out;
        for (const auto& [pair, n] : pairs) {
            if (!accepted_ncs.count(pair.nc)) out.push_back("pair references unknown NC '" + pair.nc.str() + "'");
            if (!active_patterns.count(pair.pattern))
                out.push_back("pair references unknown pattern '" + pair.pattern.key() + "'");
            if (n == 0) out.push_back("pair with zero support");
        }
        return out;
    }

    friend bool operator==(const HarvestState&, const HarvestState&) = default;
};

struct IterationReport {
    int iteration = 0;
    StrategyKind strategy = StrategyKind::strict;
    std::uint64_t n_threshold = 0;
    std::uint64_t m_threshold = 0;
    std::size_t new_ncs = 0;
    std::size_t new_patterns = 0;
    std::size_t new_pairs = 0;
    std::map<Pattern, std::size_t> ncs_per_pattern;  // new NCs credited to each step-1 pattern
    std::size_t step1_queries = 0;
    std::size_t step2_queries = 0;

    std::size_t queries_issued() const { return step1_queries + step2_queries; }

    friend bool operator==(const IterationReport&, const IterationReport&) = default;
};

/// Per pattern, the k NCs with the highest support; ties go to the
/// lexicographically smaller NC.
inline std::map<Pattern, std::vector<NounCompound>> select_nc_seeds(
    const std::map<Pattern, std::map<NounCompound, std::uint64_t>>& support, std::size_t k) {
    if (k == 0) throw Error("select_nc_seeds: k must be at least 1");
    std::map<Pattern, std::vector<NounCompound>> out;
    for (const auto& [pattern, ncs] : support) {
        std::vector<std::pair<NounCompound, std::uint64_t>> v(ncs.begin(), ncs.end());
        const auto n = std::min(k, v.size());
        std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), v.end(),
                          [](const auto& a, const auto& b) {
                              if (a.second != b.second) return a.second > b.second;
                              return a.first < b.first;
                          });
        auto& dst = out[pattern];
        for (std::size_t i = 0; i < n; ++i) dst.push_back(v[i].first);
    }
    return out;
}

/// Runs every query against the provider with up to `workers` threads.
/// Result i belongs to query i whatever the scheduling.
inline std::vector<std::vector<Snippet>> run_queries(const SnippetProvider& provider,
                                                     const std::vector<const PhraseQuery*>& queries,
                                                     std::size_t cap, unsigned workers) {
    std::vector<std::vector<Snippet>> results(queries.size());
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(queries.size())));
    if (n <= 1) {
        for (std::size_t i = 0; i < queries.size(); ++i) results[i] = provider.search(*queries[i], cap);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < queries.size(); i = next++) {
                try {
                    results[i] = provider.search(*queries[i], cap);
                } catch (...) {
                    std::lock_guard lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                    next = queries.size();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

/// Observers. Called from the engine thread, in a deterministic order.
struct EngineHooks {
    std::function<void(const HarvestState&, HarvestStep)> on_checkpoint;
    std::function<void(HarvestStep, const GeneratedQuery&, std::size_t snippets)> on_query;
};

class BootstrapEngine {
public:
    BootstrapEngine(const SnippetProvider& provider, const Lexicon& lex, const WordLists& wl,
                    const NGramTable& ngrams, BootstrapConfig config, SeedSet seeds)
        : provider_(provider), lex_(lex), wl_(wl), ngrams_(ngrams), config_(std::move(config)),
          seeds_(std::move(seeds)), seed_ncs_(seeds_.nc_set()) {
        const auto bad = config_.problems();
        if (!bad.empty()) throw Error("invalid bootstrap config: " + bad.front());
        strategy_.kind = config_.strategy;
        strategy_.seed_patterns = seeds_.pattern_set();
    }

    EngineHooks hooks;

    const BootstrapConfig& config() const { return config_; }
    const SeedSet& seeds() const { return seeds_; }

    HarvestState initial_state() const { return HarvestState::from_seeds(seeds_); }

    /// One Step-1/Step-2 round. The input state is never modified; on a
    /// provider failure the exception propagates and the caller keeps it.
    std::pair<HarvestState, IterationReport> run_iteration(const HarvestState& in) const {
        HarvestState st = in;
        ++st.iteration;
        IterationReport rep;
        rep.iteration = st.iteration;
        rep.strategy = config_.strategy;
        rep.n_threshold = config_.n_threshold;
        rep.m_threshold = config_.m_threshold;

        const auto new_ncs = step1(in, st, rep);
        if (hooks.on_checkpoint) hooks.on_checkpoint(st, HarvestStep::nc_extraction);
        if (strategy_.grows_patterns() && !new_ncs.empty()) {
            step2(new_ncs, st, rep);
        }
        if (hooks.on_checkpoint) hooks.on_checkpoint(st, HarvestStep::pattern_extraction);
        return {std::move(st), std::move(rep)};
    }

    struct RunResult {
        HarvestState state;
        std::vector<IterationReport> reports;
    };

    /// Iterates until no new NC is found or max_iterations is reached.
    RunResult run() const { return run_from(initial_state()); }

    RunResult run_from(HarvestState state) const {
        RunResult r{std::move(state), {}};
        while (r.state.iteration < config_.max_iterations) {
            auto [next, rep] = run_iteration(r.state);
            r.state = std::move(next);
            const bool fixpoint = rep.new_ncs == 0;
            r.reports.push_back(std::move(rep));
            if (fixpoint) break;
        }
        return r;
    }

private:
    std::vector<std::vector<Snippet>> execute(const std::vector<QueryBatch>& batches, HarvestStep step) const {
        // Identical query strings from different batches are issued once.
        std::vector<const PhraseQuery*> unique;
        std::vector<std::size_t> slot;
        std::map<std::string, std::size_t> first;
        for (const auto& b : batches)
            for (const auto& q : b.queries) {
                const auto [it, inserted] = first.emplace(q.query.str(), unique.size());
                if (inserted) unique.push_back(&q.query);
                slot.push_back(it->second);
            }
        const auto results = run_queries(provider_, unique, config_.snippet_cap, config_.workers);
        std::vector<std::vector<Snippet>> flat;
        flat.reserve(slot.size());
        for (const auto k : slot) flat.push_back(results[k]);
        if (hooks.on_query) {
            std::size_t i = 0;
            for (const auto& b : batches)
                for (const auto& q : b.queries) hooks.on_query(step, q, flat[i++].size());
        }
        return flat;
    }

    std::vector<NounCompound> step1(const HarvestState& before, HarvestState& st, IterationReport& rep) const {
        std::vector<QueryBatch> batches;
        const auto seeds_by_pattern = strategy_.fixes_a_noun()
                                          ? select_nc_seeds(before.support_by_pattern(), config_.top_k_nc_seeds)
                                          : std::map<Pattern, std::vector<NounCompound>>{};
        for (const auto& [pattern, found_at] : before.active_patterns) {
            if (!strategy_.allows(pattern)) continue;
            if (strategy_.fixes_a_noun()) {
                const auto it = seeds_by_pattern.find(pattern);
                if (it == seeds_by_pattern.end() || it->second.empty()) continue;
                batches.push_back(step1_queries(lex_, pattern, strategy_, it->second));
            } else {
                batches.push_back(step1_queries(lex_, pattern, strategy_, {}));
            }
        }
        const auto flat = execute(batches, HarvestStep::nc_extraction);

        std::vector<NCCandidate> cands;
        std::size_t offset = 0;
        for (const auto& b : batches) {
            const std::vector<std::vector<Snippet>> slice(flat.begin() + static_cast<std::ptrdiff_t>(offset),
                                                          flat.begin() + static_cast<std::ptrdiff_t>(offset + b.size()));
            offset += b.size();
            auto c = form_candidates(b, slice, lex_, wl_);
            cands.insert(cands.end(), c.begin(), c.end());
            rep.step1_queries += b.size();
        }

        const NcFilterContext ctx{before.accepted_ncs, seed_ncs_, lex_, ngrams_, config_.n_threshold,
                                  config_.min_ngram_count};
        std::set<NounCompound> fresh;
        for (const auto& c : filter_nc_candidates(cands, ctx)) {
            fresh.insert(c.nc);
            st.accepted_ncs.emplace(c.nc, st.iteration);
            if (st.pairs.emplace(NCPatternPair{c.nc, c.source_pattern}, c.support).second) ++rep.new_pairs;
            ++rep.ncs_per_pattern[c.source_pattern];
        }
        rep.new_ncs = fresh.size();
        return {fresh.begin(), fresh.end()};
    }

    void step2(const std::vector<NounCompound>& ncs, HarvestState& st, IterationReport& rep) const {
        std::vector<QueryBatch> batches;
        for (const auto& nc : ncs) batches.push_back(step2_queries(lex_, nc));
        const auto flat = execute(batches, HarvestStep::pattern_extraction);

        std::vector<PatternCandidate> cands;
        std::size_t offset = 0;
        for (const auto& b : batches) {
            const auto& nc = *b.origin.nc;
            std::map<Pattern, PatternCandidate> per_nc;
            std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> seen;
            for (std::size_t i = 0; i < b.size(); ++i) {
                for (const auto& snip : flat[offset + i]) {
                    for (const auto& span : split_and_screen(snip, nc, lex_)) {
                        const auto key = std::make_tuple(snip.doc_id, snip.window_start + span.head_pos,
                                                         snip.window_start + span.mod_pos);
                        if (!seen.insert(key).second) continue;
                        if (auto p = extract_pattern(snip.tokens, span.head_pos, span.mod_pos, lex_, wl_)) {
                            auto& c = per_nc[*p];
                            c.pattern = *p;
                            ++c.nc_support[nc];
                        }
                    }
                }
            }
            offset += b.size();
            rep.step2_queries += b.size();
            for (auto& [p, c] : per_nc) cands.push_back(std::move(c));
        }

        const PatternFilterContext ctx{st.active_patterns, strategy_.seed_patterns, config_.n_threshold,
                                       config_.m_threshold, config_.top_k_patterns};
        for (const auto& c : filter_pattern_candidates(cands, ctx)) {
            st.active_patterns.emplace(c.pattern, st.iteration);
            ++rep.new_patterns;
            for (const auto& [nc, n] : c.nc_support) {
                auto [it, inserted] = st.pairs.emplace(NCPatternPair{nc, c.pattern}, 0);
                it->second += n;
                if (inserted) ++rep.new_pairs;
            }
        }
    }

    const SnippetProvider& provider_;
    const Lexicon& lex_;
    const WordLists& wl_;
    const NGramTable& ngrams_;
    BootstrapConfig config_;
    SeedSet seeds_;
    std::set<NounCompound> seed_ncs_;
    Strategy strategy_;
};

} // namespace ncharvest

#endif
