#ifndef NCHARVEST_TESTS_PLANTED_HPP
#define NCHARVEST_TESTS_PLANTED_HPP

// Synthetic corpus with known ground truth: per seed pattern one seed NC
// (m0, h0), four NCs sharing its head and four sharing its modifier, all
// phrased as "H that PATTERN M" relative clauses. Also contains traps
// (head == modifier, rare bigram), non-noun fillers in the argument slot,
// a secondary pattern for Step 2, and unrelated background sentences.

#include <array>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ncharvest.hpp"

namespace planted {

using namespace ncharvest;

struct PlantedPattern {
    Pattern pattern;
    std::string h0, m0;
    std::array<std::string, 4> mods;   // NCs (mods[i], h0)
    std::array<std::string, 4> heads;  // NCs (m0, heads[j])
    std::string rare_mod;              // (rare_mod, h0): bigram below threshold
};

inline std::vector<PlantedPattern> default_patterns() {
    return {
        {Pattern(Lemma("make"), Voice::passive, "of"), "cake", "almond",
         {"walnut", "banana", "carrot", "cherry"}, {"muffin", "biscuit", "tart", "pancake"}, "pear"},
        {Pattern(Lemma("contain"), Voice::active, ""), "soup", "onion",
         {"lettuce", "spinach", "mushroom", "potato"}, {"stew", "salad", "sandwich", "pie"}, "nut"},
        {Pattern(Lemma("consist"), Voice::active, "of"), "team", "soldier",
         {"nurse", "pilot", "sailor", "farmer"}, {"squad", "crew", "troop", "gang"}, "oat"},
        {Pattern(Lemma("compose"), Voice::passive, "of"), "wall", "granite",
         {"brick", "cement", "timber", "quartz"}, {"tower", "bridge", "column", "floor"}, "rice"},
        {Pattern(Lemma("taste"), Voice::active, "like"), "syrup", "honey",
         {"caramel", "mango", "melon", "lemonade"}, {"jelly", "yogurt", "frosting", "icing"}, "corn"},
    };
}

inline const std::array<std::string, 10> kFillers{"quickly", "slowly",  "carefully", "badly", "entirely",
                                                  "mostly",  "partly",  "largely",   "gently", "simply"};

inline const Pattern kSecondaryPattern{Lemma("produce"), Voice::passive, "from"};

struct Corpus {
    std::vector<std::vector<std::string>> docs;
    std::vector<PlantedPattern> patterns;
    SeedSet seeds;
    std::vector<NounCompound> planted;     // the 40 targets
    std::vector<NounCompound> rare_traps;  // bigram count 99
    std::vector<NounCompound> same_traps;  // head == modifier
    NGramTable ngrams;
    CorpusIndex index;
};

struct Options {
    unsigned seed = 20100715;
    std::size_t occurrences = 6;        // sentences per planted NC
    std::size_t secondary_occurrences = 2;
    std::size_t background = 400;       // unrelated sentences
    std::size_t sentences_per_doc = 12;
    std::uint64_t planted_bigram = 150;
    std::uint64_t rare_bigram = 99;
};

inline Corpus make(const Lexicon& lex, const Options& opt = {}) {
    Corpus c;
    c.patterns = default_patterns();
    std::mt19937 rng(opt.seed);
    const auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };

    const std::vector<std::string> openers{"we saw that", "yesterday", "at the fair", "everyone knows", "so"};
    const std::vector<std::string> tails{", said the cook", "and it sold well", "in the morning", "for years",
                                         "but nobody cared", "at the market"};

    std::vector<std::vector<std::string>> sentences;
    const auto add = [&](const std::string& s) { sentences.push_back(text::tokenize(s)); };

    // "H that SURFACE M tail ." cycling over inflections and number forms.
    const auto relative = [&](const Pattern& p, const std::string& head, const std::string& mod, std::size_t n,
                              std::size_t offset) {
        const auto surfaces = lex.inflect_pattern(p);
        const auto hf = lex.noun_forms(Lemma(head));
        const auto mf = lex.noun_forms(Lemma(mod));
        for (std::size_t k = 0; k < n; ++k) {
            const auto& ip = surfaces[(k + offset) % surfaces.size()];
            const auto& h = ip.number == GrammaticalNumber::singular ? hf.singular : hf.plural;
            const auto& m = (k % 2 == 0) ? mf.plural : mf.singular;
            add(pick(openers) + " the " + h + " that " + text::join(ip.surface) + " " + m + " " + pick(tails) + " .");
        }
    };

    for (std::size_t pi = 0; pi < c.patterns.size(); ++pi) {
        const auto& pp = c.patterns[pi];
        const NounCompound seed_nc{Lemma(pp.m0), Lemma(pp.h0)};
        c.seeds.ncs.push_back(seed_nc);
        c.seeds.patterns.push_back(pp.pattern);
        c.seeds.pairs.push_back({NCPatternPair{seed_nc, pp.pattern}, 1});
        relative(pp.pattern, pp.h0, pp.m0, 2, pi);

        for (std::size_t i = 0; i < 4; ++i) {
            c.planted.push_back({Lemma(pp.mods[i]), Lemma(pp.h0)});
            relative(pp.pattern, pp.h0, pp.mods[i], opt.occurrences, i);
            relative(kSecondaryPattern, pp.h0, pp.mods[i], opt.secondary_occurrences, i);
            c.planted.push_back({Lemma(pp.m0), Lemma(pp.heads[i])});
            relative(pp.pattern, pp.heads[i], pp.m0, opt.occurrences, i + 1);
            relative(kSecondaryPattern, pp.heads[i], pp.m0, opt.secondary_occurrences, i + 1);
        }
        c.rare_traps.push_back({Lemma(pp.rare_mod), Lemma(pp.h0)});
        relative(pp.pattern, pp.h0, pp.rare_mod, opt.occurrences, 0);
        c.same_traps.push_back({Lemma(pp.h0), Lemma(pp.h0)});
        relative(pp.pattern, pp.h0, pp.h0, opt.occurrences, 1);

        // Non-noun fillers in both argument slots.
        const auto surfaces = lex.inflect_pattern(pp.pattern);
        for (std::size_t k = 0; k < opt.occurrences; ++k) {
            const auto& ip = surfaces[k % surfaces.size()];
            const auto hf = lex.noun_forms(Lemma(pp.h0));
            const auto& h = ip.number == GrammaticalNumber::singular ? hf.singular : hf.plural;
            const auto& f1 = kFillers[(2 * pi) % kFillers.size()];
            const auto& f2 = kFillers[(2 * pi + 1) % kFillers.size()];
            add("the " + h + " that " + text::join(ip.surface) + " " + f1 + " , said the cook .");
            add("so , " + f2 + " that " + text::join(ip.surface) + " " + pp.m0 + " .");
        }
    }

    const std::vector<std::string> nouns{"river", "tree", "village", "road", "child", "doctor", "book", "garden",
                                         "lake", "hill"};
    const std::vector<std::string> verbs{"visited", "painted", "cleaned", "passed", "loved"};
    for (std::size_t k = 0; k < opt.background; ++k)
        add("the " + pick(nouns) + " " + pick(verbs) + " the " + pick(nouns) + " near the " + pick(nouns) + " .");

    std::shuffle(sentences.begin(), sentences.end(), rng);
    for (std::size_t i = 0; i < sentences.size(); i += opt.sentences_per_doc) {
        std::vector<std::string> doc;
        for (std::size_t j = i; j < std::min(sentences.size(), i + opt.sentences_per_doc); ++j)
            doc.insert(doc.end(), sentences[j].begin(), sentences[j].end());
        c.docs.push_back(std::move(doc));
    }

    c.index = CorpusIndex::build(c.docs);
    c.ngrams = NGramTable::from_corpus(c.index, 2);
    const auto top_up = [&](const NounCompound& nc, std::uint64_t target) {
        const auto have = c.ngrams.count({nc.modifier.str(), nc.head.str()});
        if (have >= target) return;
        c.ngrams.add({nc.modifier.str(), nc.head.str()}, target - have);
        c.ngrams.add({nc.modifier.str()}, target - have);
        c.ngrams.add({nc.head.str()}, target - have);
    };
    for (const auto& nc : c.planted) top_up(nc, opt.planted_bigram);
    for (const auto& nc : c.same_traps) top_up(nc, opt.planted_bigram);
    for (const auto& nc : c.rare_traps) top_up(nc, opt.rare_bigram);
    return c;
}

/// Documents as text lines, one document per line.
inline std::string as_lines(const Corpus& c) {
    std::string out;
    for (const auto& d : c.docs) out += text::join(d) + "\n";
    return out;
}

inline std::string seed_ncs_tsv(const SeedSet& s) {
    std::string out;
    for (const auto& nc : s.ncs) out += nc.modifier.str() + "\t" + nc.head.str() + "\n";
    return out;
}

inline std::string seed_patterns_tsv(const SeedSet& s) {
    std::string out;
    for (const auto& p : s.patterns)
        out += p.verb.str() + "\t" + std::string(to_string(p.voice)) + "\t" + (p.has_preposition() ? p.preposition : "-") + "\n";
    return out;
}

inline std::string seed_pairs_tsv(const SeedSet& s) {
    std::string out;
    for (const auto& sp : s.pairs)
        out += sp.pair.nc.modifier.str() + "\t" + sp.pair.nc.head.str() + "\t" + sp.pair.pattern.verb.str() + "\t" +
               std::string(to_string(sp.pair.pattern.voice)) + "\t" +
               (sp.pair.pattern.has_preposition() ? sp.pair.pattern.preposition : "-") + "\t" +
               std::to_string(sp.support) + "\n";
    return out;
}

} // namespace planted

#endif
