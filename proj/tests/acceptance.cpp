// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 1 if a
// criterion fails that is not marked known-unattainable; with --strict, if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/pattern_cases.hpp"
#include "support/planted.hpp"
#include "support/workspace.hpp"

using namespace ncharvest;
using fixtures::lexicon;
using fixtures::nc;
using fixtures::pat;
using fixtures::wordlists;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Committed per-pattern query counts from the inflection grid.
constexpr std::size_t kLooseActive = 5;
constexpr std::size_t kLoosePassive = 6;
constexpr std::size_t kStrictActive = 20;   // per seed NC
constexpr std::size_t kStrictPassive = 24;  // per seed NC

// Published approximate counts and the allowed distance from them.
constexpr std::size_t kPublishedLooseActive = 14;
constexpr std::size_t kPublishedLoosePassive = 20;
constexpr std::size_t kPublishedStrictActive = 28;
constexpr std::size_t kPublishedStrictPassive = 40;
constexpr std::size_t kPublishedSlack = 2;

bool near(std::size_t a, std::size_t b) { return (a > b ? a - b : b - a) <= kPublishedSlack; }

Outcome seed_fidelity() {
    const auto s = fixtures::shipped_seeds();
    std::ostringstream d;
    d << s.ncs.size() << " NCs, " << s.patterns.size() << " patterns, " << s.pairs.size() << " pairs";
    return {s.ncs.size() == 20 && s.patterns.size() == 18 && s.pairs.size() == 84, d.str()};
}

Outcome query_goldens() {
    const auto made = pat("make", Voice::passive, "of");
    const auto juice = nc("orange", "juice");
    const auto loose = step1_queries(lexicon(), made, Strategy{StrategyKind::loose, {}}, {});
    const auto strict = step1_queries(lexicon(), made, Strategy{StrategyKind::strict, {}}, {juice});
    const auto step2 = step2_queries(lexicon(), juice);
    const auto has = [](const QueryBatch& b, const std::string& q) {
        return std::any_of(b.queries.begin(), b.queries.end(), [&](const GeneratedQuery& g) { return g.query.str() == q; });
    };
    const std::vector<std::pair<const QueryBatch*, std::string>> want{{&loose, "* that were made of *"},
                                                                      {&strict, "juice that was made of *"},
                                                                      {&strict, "* that is made of oranges"},
                                                                      {&step2, "juice that * oranges"},
                                                                      {&step2, "juices which * * * * * * oranges"}};
    std::size_t ok = 0;
    std::string missing;
    for (const auto& [b, q] : want) {
        if (has(*b, q)) ++ok;
        else missing += " '" + q + "'";
    }
    return {ok == want.size(), std::to_string(ok) + "/5 present" + (missing.empty() ? "" : ", missing:" + missing)};
}

Outcome query_counts() {
    const auto active = pat("consist", Voice::active, "of");
    const auto passive = pat("make", Voice::passive, "of");
    const auto seed = nc("orange", "juice");
    const Strategy loose{StrategyKind::loose, {}};
    const Strategy strict{StrategyKind::strict, {}};
    const auto la = step1_queries(lexicon(), active, loose, {}).size();
    const auto lp = step1_queries(lexicon(), passive, loose, {}).size();
    const auto sa = step1_queries(lexicon(), active, strict, {seed}).size();
    const auto sp = step1_queries(lexicon(), passive, strict, {seed}).size();
    const bool golden = la == kLooseActive && lp == kLoosePassive && sa == kStrictActive && sp == kStrictPassive;
    const bool published = near(la, kPublishedLooseActive) && near(lp, kPublishedLoosePassive) && near(sa, kPublishedStrictActive) &&
                       near(sp, kPublishedStrictPassive);
    std::ostringstream d;
    d << "loose " << la << "/" << lp << ", strict " << sa << "/" << sp << " (active/passive); constants "
      << (golden ? "match" : "differ") << "; published ~" << kPublishedLooseActive << "/" << kPublishedLoosePassive << " and ~"
      << kPublishedStrictActive << "/" << kPublishedStrictPassive << " +-" << kPublishedSlack << ": "
      << (published ? "within" : "outside");
    return {golden && published, d.str()};
}

Outcome search_oracle() {
    std::mt19937 rng(2010);
    std::size_t agree = 0, total = 0;
    for (int c = 0; c < 200; ++c) {
        const std::size_t vocab_size = 3 + rng() % 40;
        std::vector<std::string> vocab;
        for (std::size_t i = 0; i < vocab_size; ++i) vocab.push_back("w" + std::to_string(i));
        std::size_t budget = 1 + rng() % 10000;
        std::vector<std::vector<std::string>> docs;
        while (budget > 0) {
            const std::size_t len = std::min<std::size_t>(budget, 1 + rng() % 400);
            std::vector<std::string> d(len);
            for (auto& t : d) t = vocab[rng() % vocab_size];
            docs.push_back(std::move(d));
            budget -= len;
        }
        auto idx = CorpusIndex::build(docs);
        const std::size_t radius = rng() % 12;
        idx.set_snippet_radius(radius);
        for (int k = 0; k < 50; ++k) {
            std::vector<QuerySlot> slots(1 + rng() % 6);
            for (auto& s : slots)
                s = rng() % 3 == 0 ? QuerySlot::any() : QuerySlot::literal(vocab[rng() % vocab_size]);
            if (std::all_of(slots.begin(), slots.end(), [](const QuerySlot& s) { return s.wildcard; }))
                slots[rng() % slots.size()] = QuerySlot::literal(vocab[0]);
            const PhraseQuery q(slots);
            const std::size_t cap = rng() % 4 == 0 ? 1 + rng() % 5 : kDefaultSnippetCap;
            ++total;
            agree += idx.search(q, cap) == oracle::linear_search(docs, q, cap, radius);
        }
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " queries agree"};
}

Outcome planted_end_to_end() {
    const auto c = planted::make(lexicon());
    BootstrapConfig strict;
    strict.strategy = StrategyKind::strict;
    strict.n_threshold = 5;
    const auto r = BootstrapEngine(c.index, lexicon(), wordlists(), c.ngrams, strict, c.seeds).run();
    std::size_t found = 0;
    for (const auto& p : c.planted) found += r.state.accepted_ncs.count(p);
    std::size_t violations = 0;
    for (const auto& [n, it] : r.state.accepted_ncs) {
        if (it == 0) continue;
        violations += n.head == n.modifier;
        violations += !lexicon().is_noun(n.modifier.str()) || !lexicon().is_noun(n.head.str());
        violations += c.ngrams.count({n.modifier.str(), n.head.str()}) < strict.min_ngram_count;
    }

    BootstrapConfig nco = strict;
    nco.strategy = StrategyKind::nc_only_strict;
    nco.m_threshold = 1;  // would admit any pattern if Step 2 ran
    const auto r2 = BootstrapEngine(c.index, lexicon(), wordlists(), c.ngrams, nco, c.seeds).run();
    const bool frozen = std::all_of(r2.reports.begin(), r2.reports.end(),
                                    [](const IterationReport& rep) { return rep.new_patterns == 0; }) &&
                        !r2.reports.empty();

    const double recall = static_cast<double>(found) / static_cast<double>(c.planted.size());
    std::ostringstream d;
    d << "strict recovered " << found << "/" << c.planted.size() << " planted NCs in " << r.reports.size()
      << " iterations, " << violations << " condition 2-4 violations; nc_only_strict new_patterns=0 in "
      << r2.reports.size() << "/" << r2.reports.size() << " iterations" << (frozen ? "" : " (NOT frozen)");
    return {recall >= 0.9 && violations == 0 && frozen, d.str()};
}

Outcome filter_boundaries() {
    const std::map<NounCompound, int> history;
    const std::set<NounCompound> seeds;
    NGramTable ngrams;
    ngrams.add({"lemon", "juice"}, 99);
    ngrams.add({"grape", "juice"}, 100);
    const NcFilterContext ctx{history, seeds, lexicon(), ngrams, 5, 100};
    const auto made = pat("make", Voice::passive, "of");
    const auto accepted = [&](const NounCompound& n, std::uint64_t support) {
        const std::vector<NCCandidate> v{{n, made, support}};
        return !filter_nc_candidates(v, ctx).empty();
    };
    int ok = 0;
    ok += !accepted(nc("lemon", "juice"), 9);
    ok += accepted(nc("grape", "juice"), 9);
    ok += !accepted(nc("grape", "juice"), 4);
    ok += accepted(nc("grape", "juice"), 5);

    const std::map<Pattern, int> phistory;
    const std::set<Pattern> pseeds;
    std::vector<PatternCandidate> cands;
    for (int i = 0; i < 25; ++i) {
        PatternCandidate pc{Pattern(Lemma("verb" + std::string(1, static_cast<char>('a' + i))), Voice::active, ""), {}};
        for (int k = 0; k < 30; ++k) pc.nc_support[nc("m" + std::to_string(k), "h")] = 1;
        cands.push_back(pc);
    }
    std::vector<Pattern> expected;
    for (int i = 0; i < 20; ++i) expected.push_back(cands[static_cast<std::size_t>(i)].pattern);
    std::mt19937 rng(1);
    bool stable = true;
    for (int round = 0; round < 20; ++round) {
        std::shuffle(cands.begin(), cands.end(), rng);
        stable = stable && filter_patterns(cands, {phistory, pseeds, 5, 20}) == expected;
    }
    ok += stable;
    return {ok == 5, std::to_string(ok) + "/5 boundary checks (99 reject, 100 accept, N-1 reject, N accept, top-20 tie-break)"};
}

Outcome pattern_extraction() {
    const auto t = fixtures::toks("juice that is squeezed from oranges");
    const auto p = extract_pattern(t, 0, t.size() - 1, lexicon(), wordlists());
    const bool golden = p && *p == pat("squeeze", Voice::passive, "from");
    std::size_t ok = 0, two_vp_rejected = 0, two_vp = 0;
    for (const auto& c : pattern_cases::kCases) {
        const auto tk = fixtures::toks(std::string(c.sentence));
        const auto got = extract_pattern(tk, 1, tk.size() - 1, lexicon(), wordlists());
        ok += (got ? got->key() : std::string()) == c.expected;
    }
    for (const auto* s : {"juice that people say is made of oranges", "cake that contains and is made of almonds",
                          "wall that was built using bricks"}) {
        const auto tk = fixtures::toks(s);
        ++two_vp;
        two_vp_rejected += !extract_pattern(tk, 0, tk.size() - 1, lexicon(), wordlists());
    }
    std::ostringstream d;
    d << "squeeze/passive/from " << (golden ? "ok" : "WRONG") << ", " << two_vp_rejected << "/" << two_vp
      << " two-VP sentences rejected, " << ok << "/" << pattern_cases::kCases.size() << " hand-traced cases";
    return {golden && two_vp_rejected == two_vp && ok == pattern_cases::kCases.size(), d.str()};
}

Outcome kappa_oracle() {
    std::mt19937 rng(85);
    double worst = 0;
    int checked = 0;
    while (checked < 1000) {
        const std::size_t n = 2 + rng() % 400;
        std::vector<bool> la(n), lb(n);
        JudgmentFile a, b;
        for (std::size_t i = 0; i < n; ++i) {
            la[i] = rng() % 2;
            lb[i] = rng() % 4 == 0 ? !la[i] : static_cast<bool>(la[i]);
            a.labels["i" + std::to_string(i)] = la[i];
            b.labels["i" + std::to_string(i)] = lb[i];
        }
        const auto first = la[0];
        if (std::all_of(la.begin(), la.end(), [&](bool x) { return x == first; }) &&
            std::all_of(lb.begin(), lb.end(), [&](bool x) { return x == first; }))
            continue;
        worst = std::max(worst, std::abs(cohen_kappa(a, b) - oracle::kappa(la, lb)));
        ++checked;
    }
    JudgmentFile a, b;
    int id = 0;
    const auto add = [&](bool x, bool y, int count) {
        for (int i = 0; i < count; ++i, ++id) {
            a.labels["n" + std::to_string(id)] = x;
            b.labels["n" + std::to_string(id)] = y;
        }
    };
    add(true, true, 160);
    add(true, false, 20);
    add(false, true, 31);
    add(false, false, 129);
    const double k = cohen_kappa(a, b);
    std::ostringstream d;
    d << "max |kappa - oracle| = " << worst << " over " << checked << " pairs; 340-item matrix p_o=0.85 kappa="
      << format_kappa(k);
    return {worst <= 1e-12 && k >= 0.60 && k <= 0.72, d.str()};
}

Outcome dice_properties() {
    bool ok = std::abs(dice(200, 100, 30) - 0.2) < 1e-15;
    std::mt19937 rng(42);
    std::vector<JudgedValue> items;
    for (int i = 0; i < 5000; ++i) {
        const std::uint64_t x = 1 + rng() % 5000, y = 1 + rng() % 5000;
        const std::uint64_t j = rng() % (std::min(x, y) + 1);
        const double d = dice(x, y, j);
        ok = ok && d >= 0.0 && d <= 1.0 && d == dice(y, x, j);
        items.push_back({d, rng() % 2 == 0});
    }
    items.push_back({1.0, true});
    items.push_back({0.0, false});
    bool partition = true;
    for (std::size_t bins : {1u, 3u, 10u, 17u}) {
        std::size_t n = 0, correct = 0, expect_correct = 0;
        for (const auto& b : bin_accuracy_by_dice(items, bins)) n += b.n, correct += b.correct;
        for (const auto& it : items) expect_correct += it.correct;
        partition = partition && n == items.size() && correct == expect_correct;
    }
    return {ok && partition, std::string("dice(200,100,30)=0.2, range/symmetry on 5000 draws, bins partition input: ") +
                                 (ok && partition ? "yes" : "no")};
}

Outcome replay_determinism() {
    fixtures::TempDir dir;
    const auto c = planted::make(lexicon());
    const auto f = workspace::write_planted(c, dir.path() / "in");
    write_file(dir.file("a.conf"), workspace::config_text(f, dir.file("a")));
    write_file(dir.file("b.conf"), workspace::config_text(f, dir.file("b")));
    PipelineOptions one, four;
    four.workers = 4;
    run_pipeline(RunConfig::load(dir.file("a.conf")), one);
    run_pipeline(RunConfig::load(dir.file("b.conf")), four);
    std::vector<std::string> files{"reports.jsonl", "state.json", "dataset.jsonl", "ncs.tsv", "patterns.tsv"};
    for (const auto& e : std::filesystem::directory_iterator(dir.file("a") + "/checkpoints"))
        files.push_back("checkpoints/" + e.path().filename().string());
    std::size_t same = 0;
    for (const auto& name : files) {
        const auto pa = dir.file("a") + "/" + name, pb = dir.file("b") + "/" + name;
        same += std::filesystem::exists(pb) && text::read_file(pa) == text::read_file(pb);
    }
    return {same == files.size() && files.size() > 5,
            std::to_string(same) + "/" + std::to_string(files.size()) +
                " artifacts byte-identical across two runs (1 and 4 workers)"};
}

} // namespace

int main(int argc, char** argv) {
    const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
        bool known_unattainable = false;
    };
    const std::vector<Criterion> criteria{
        {1, "seed fidelity", 1, seed_fidelity},
        {2, "query golden strings", 1, query_goldens},
        // The inflection grid yields a strict/loose ratio of 4; the published
        // approximate counts imply 2, so no grid meets every target within +-2.
        {3, "query-count goldens", 1, query_counts, true},
        {4, "search oracle equivalence", 60, search_oracle},
        {5, "planted-corpus end-to-end", 300, planted_end_to_end},
        {6, "filter boundaries", 1, filter_boundaries},
        {7, "pattern-extraction suite", 1, pattern_extraction},
        {8, "kappa oracle", 5, kappa_oracle},
        {9, "dice properties", 1, dice_properties},
        {10, "replay determinism", 300, replay_determinism},
    };
    // Load shared data outside the timed sections.
    (void)lexicon();
    (void)wordlists();

    int failed = 0, unexpected = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        unexpected += !pass && (strict || !c.known_unattainable);
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2fs of %.0fs", secs, c.budget_s);
        std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing
                  << (in_time ? "" : ", over budget") << ")"
                  << (!pass && c.known_unattainable ? " [known unattainable]" : "") << "\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " acceptance criteria passed\n";
    return unexpected == 0 ? 0 : 1;
}
