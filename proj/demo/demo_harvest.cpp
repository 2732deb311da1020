// Small end-to-end run: index demo/corpus.txt, bootstrap from the shipped
// seeds with low thresholds, print what was harvested.

#include <iostream>
#include <string>

#include "ncharvest.hpp"

#ifndef NCHARVEST_DATA_DIR
#define NCHARVEST_DATA_DIR "data"
#endif
#ifndef NCHARVEST_DEMO_DIR
#define NCHARVEST_DEMO_DIR "demo"
#endif

using namespace ncharvest;

int main(int argc, char** argv) {
    const std::string corpus = argc > 1 ? argv[1] : NCHARVEST_DEMO_DIR "/corpus.txt";
    const std::string data = NCHARVEST_DATA_DIR;
    try {
        const auto lex = Lexicon::load(data + "/lexicon.tsv");
        const auto wl = WordLists::load(data + "/wordlists.tsv");
        auto seeds = load_seeds(data + "/seeds/seed_ncs.tsv", data + "/seeds/seed_patterns.tsv",
                                data + "/seeds/seed_pairs.tsv");
        const auto index = CorpusIndex::build(read_corpus(corpus, CorpusLayout::lines));
        const auto ngrams = NGramTable::from_corpus(index, 2);

        BootstrapConfig cfg;
        cfg.strategy = StrategyKind::loose;
        cfg.n_threshold = 2;
        cfg.m_threshold = 2;
        cfg.min_ngram_count = 1;
        cfg.max_iterations = 2;

        BootstrapEngine engine(index, lex, wl, ngrams, cfg, seeds);
        const auto result = engine.run();
        for (const auto& r : result.reports)
            std::cout << "iteration " << r.iteration << ": " << r.new_ncs << " new NCs, " << r.new_patterns
                      << " new patterns, " << r.queries_issued() << " queries\n";
        std::cout << "\nharvested noun compounds:\n";
        for (const auto& [n, it] : result.state.accepted_ncs)
            if (it > 0) std::cout << "  " << n.modifier.str() << ' ' << n.head.str() << "  (iteration " << it << ")\n";
        std::cout << "\ndataset:\n" << emit_dataset(result.state, lex, DatasetFormat::tsv);
    } catch (const std::exception& e) {
        std::cerr << "demo_harvest: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
