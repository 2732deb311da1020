// nch: build corpus indexes, run harvesting experiments, analyse results.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncharvest.hpp"

#ifndef NCHARVEST_DATA_DIR
#define NCHARVEST_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace ncharvest;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct IndexArgs {
    std::string corpus;
    std::string layout = "auto";
    std::string out;
    std::size_t ngram_order = 2;
};

int cmd_index(const IndexArgs& a) {
    if (!fs::exists(a.corpus)) {
        std::cerr << "nch index: no such corpus path '" << a.corpus << "'\n";
        return kUsage;
    }
    CorpusLayout layout = fs::is_directory(a.corpus) ? CorpusLayout::files : CorpusLayout::lines;
    if (a.layout == "lines") layout = CorpusLayout::lines;
    else if (a.layout == "files") layout = CorpusLayout::files;

    const auto index = CorpusIndex::build(read_corpus(a.corpus, layout));
    const auto ngrams = NGramTable::from_corpus(index, a.ngram_order);
    fs::create_directories(a.out);
    const auto idx_path = (fs::path(a.out) / "corpus.idx").string();
    const auto ng_path = (fs::path(a.out) / "ngrams.tsv").string();
    index.save(idx_path);
    ngrams.save(ng_path);
    std::cout << "documents\t" << index.document_count() << '\n'
              << "tokens\t" << index.token_count() << '\n'
              << "vocabulary\t" << index.vocabulary_size() << '\n'
              << "ngrams\t" << ngrams.size() << '\n'
              << "index\t" << idx_path << '\n'
              << "ngram_table\t" << ng_path << '\n';
    return kOk;
}

struct RunArgs {
    std::string config;
    unsigned workers = 1;
    std::string format = "jsonl";
    std::string debug_queries;
};

int cmd_run(RunArgs a) {
    if (a.config.empty()) {
        if (const char* env = std::getenv("NCH_CONFIG")) a.config = env;
    }
    if (a.config.empty()) {
        std::cerr << "nch run: --config is required (or set NCH_CONFIG)\n";
        return kUsage;
    }
    RunConfig cfg;
    PipelineOptions opt;
    try {
        cfg = RunConfig::load(a.config);
        opt.format = parse_dataset_format(a.format);
    } catch (const Error& e) {
        std::cerr << "nch run: " << e.what() << '\n';
        return kUsage;
    }
    opt.workers = a.workers;
    opt.debug_queries = a.debug_queries;

    const auto summary = run_pipeline(cfg, opt);
    for (const auto& r : summary.reports) {
        std::cout << "iteration " << r.iteration << " [" << to_string(r.strategy) << " N=" << r.n_threshold
                  << " M=" << r.m_threshold << "]: " << r.new_ncs << " new NCs, " << r.new_patterns
                  << " new patterns, " << r.new_pairs << " new pairs, " << r.queries_issued() << " queries\n";
    }
    std::cout << "total: " << summary.state.accepted_ncs.size() << " NCs, "
              << summary.state.active_patterns.size() << " patterns, " << summary.state.pairs.size()
              << " pairs -> " << cfg.out_dir << '\n';
    return kOk;
}

struct AnalyzeArgs {
    std::string state;
    std::vector<std::string> judgments;
    std::string ngrams;
    std::size_t bins = 10;
    std::string format = "jsonl";
    std::string lexicon = NCHARVEST_DATA_DIR "/lexicon.tsv";
};

int list_missing(const std::string& what, const std::vector<std::string>& ids) {
    std::cerr << "nch analyze: " << ids.size() << ' ' << what << ":\n";
    for (const auto& id : ids) std::cerr << "  " << id << '\n';
    return kFailure;
}

int cmd_analyze(const AnalyzeArgs& a) {
    const auto state = load_state(a.state);
    if (a.judgments.size() > 2) {
        std::cerr << "nch analyze: at most two judgment files\n";
        return kUsage;
    }
    if (a.judgments.size() == 2) {
        const auto ja = JudgmentFile::load(a.judgments[0]);
        const auto jb = JudgmentFile::load(a.judgments[1]);
        if (const auto bad = mismatched_ids(ja, jb); !bad.empty())
            return list_missing("item ids not present in both judgment files", bad);
        std::size_t agree = 0;
        for (const auto& [id, l] : ja.labels) agree += jb.labels.at(id) == l;
        std::cout << "items\t" << ja.size() << '\n'
                  << "agreement\t" << format_kappa(static_cast<double>(agree) / static_cast<double>(ja.size())) << '\n'
                  << "kappa\t" << format_kappa(cohen_kappa(ja, jb)) << '\n';
        return kOk;
    }
    if (a.judgments.size() == 1) {
        if (a.ngrams.empty()) {
            std::cerr << "nch analyze: a single judgment file needs --ngrams for the Dice table\n";
            return kUsage;
        }
        const auto j = JudgmentFile::load(a.judgments[0]);
        const auto ngrams = NGramTable::load(a.ngrams);
        std::vector<std::string> missing;
        const auto values = judged_dice(state, j, ngrams, &missing);
        if (!missing.empty()) return list_missing("judged items are not accepted NCs", missing);
        std::cout << bin_table_tsv(bin_accuracy_by_dice(values, a.bins));
        return kOk;
    }
    const auto lex = Lexicon::load(a.lexicon);
    std::cout << emit_dataset(state, lex, parse_dataset_format(a.format));
    return kOk;
}

struct EmitArgs {
    std::string state;
    std::string format = "jsonl";
    std::string lexicon = NCHARVEST_DATA_DIR "/lexicon.tsv";
    std::string out;
};

int cmd_emit(const EmitArgs& a) {
    const auto state = load_state(a.state);
    const auto lex = Lexicon::load(a.lexicon);
    const auto data = emit_dataset(state, lex, parse_dataset_format(a.format));
    if (a.out.empty()) std::cout << data;
    else write_file(a.out, data);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nch: noun compound and paraphrasing pattern harvester"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    IndexArgs ia;
    auto* index = app.add_subcommand("index", "Build a positional index and n-gram table from a corpus");
    index->add_option("--corpus", ia.corpus, "Corpus file (one document per line) or directory")->required();
    index->add_option("--layout", ia.layout, "lines, files or auto")
        ->check(CLI::IsMember({"auto", "lines", "files"}));
    index->add_option("--out", ia.out, "Output directory")->required();
    index->add_option("--ngram-order", ia.ngram_order, "Longest n-gram to count")->check(CLI::Range(1, 5));

    RunArgs ra;
    auto* run = app.add_subcommand("run", "Run bootstrapping from a config file");
    run->add_option("--config", ra.config, "Config file (default: $NCH_CONFIG)");
    run->add_option("--workers", ra.workers, "Search threads")->check(CLI::Range(1u, 256u));
    run->add_option("--format", ra.format, "Dataset format: tsv or jsonl")
        ->check(CLI::IsMember({"tsv", "jsonl"}));
    run->add_option("--debug-queries", ra.debug_queries, "Write every issued query with its hit count");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "Kappa, Dice bins, or dataset from a state file");
    analyze->add_option("--state", aa.state, "State or checkpoint JSON")->required()->check(CLI::ExistingFile);
    analyze->add_option("--judgments", aa.judgments, "Judgment TSV (one or two)")->check(CLI::ExistingFile);
    analyze->add_option("--ngrams", aa.ngrams, "N-gram table for Dice")->check(CLI::ExistingFile);
    analyze->add_option("--bins", aa.bins, "Number of Dice bins")->check(CLI::PositiveNumber);
    analyze->add_option("--format", aa.format, "Dataset format: tsv or jsonl")
        ->check(CLI::IsMember({"tsv", "jsonl"}));
    analyze->add_option("--lexicon", aa.lexicon, "Lexicon file");

    EmitArgs ea;
    auto* emit = app.add_subcommand("emit", "Write the NC/pattern dataset from a state file");
    emit->add_option("--state", ea.state, "State or checkpoint JSON")->required()->check(CLI::ExistingFile);
    emit->add_option("--format", ea.format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl"}));
    emit->add_option("--lexicon", ea.lexicon, "Lexicon file");
    emit->add_option("--out", ea.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*index) return cmd_index(ia);
        if (*run) return cmd_run(ra);
        if (*analyze) return cmd_analyze(aa);
        if (*emit) return cmd_emit(ea);
    } catch (const ConfigError& e) {
        std::cerr << "nch: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "nch: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "nch: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
