#ifndef NCHARVEST_PIPELINE_HPP
#define NCHARVEST_PIPELINE_HPP

#include <openssl/evp.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ncharvest/analysis.hpp"
#include "ncharvest/bootstrap.hpp"
#include "ncharvest/corpus_index.hpp"
#include "ncharvest/ngram_table.hpp"
#include "ncharvest/seeds.hpp"
#include "ncharvest/state_io.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Config problems, reported all at once.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> problems)
        : Error(join_problems(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join_problems(const std::vector<std::string>& ps) {
        std::string s = "invalid configuration:";
        for (const auto& p : ps) s += "\n  " + p;
        return s;
    }
    std::vector<std::string> problems_;
};

inline std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

/// Flat `key = value` run configuration. Relative paths resolve against
/// the config file's directory.
struct RunConfig {
    std::string index;
    std::string ngrams;
    std::string lexicon;
    std::string wordlists;
    std::string seed_ncs;
    std::string seed_patterns;
    std::string seed_pairs;
    std::string out_dir;
    std::string resume;  // optional checkpoint to continue from
    std::size_t snippet_radius = kDefaultSnippetRadius;
    BootstrapConfig engine;

    static const std::vector<std::string>& path_keys() {
        static const std::vector<std::string> k{"index",         "ngrams",     "lexicon", "wordlists", "seed_ncs",
                                                "seed_patterns", "seed_pairs", "out_dir", "resume"};
        return k;
    }

    /// Parses and validates. Throws ConfigError listing every problem.
    static RunConfig parse(std::string_view content, const std::string& source,
                           const std::filesystem::path& base_dir) {
        std::vector<std::string> problems;
        std::map<std::string, std::string> kv;
        std::size_t lineno = 0;
        for (const auto& raw : text::split(content, '\n')) {
            ++lineno;
            const auto line = text::trim(raw);
            if (text::is_comment_or_blank(line)) continue;
            const auto where = source + ":" + std::to_string(lineno) + ": ";
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                problems.push_back(where + "expected key = value");
                continue;
            }
            const std::string key(text::trim(line.substr(0, eq)));
            const std::string val(text::trim(line.substr(eq + 1)));
            if (!kv.emplace(key, val).second) problems.push_back(where + "duplicate key '" + key + "'");
        }

        RunConfig c;
        const auto take = [&](const std::string& key) -> std::optional<std::string> {
            const auto it = kv.find(key);
            if (it == kv.end()) return std::nullopt;
            auto v = it->second;
            kv.erase(it);
            return v;
        };
        const auto number = [&](const std::string& key, auto& dst) {
            const auto v = take(key);
            if (!v) return;
            using T = std::remove_reference_t<decltype(dst)>;
            T n{};
            const auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), n);
            if (ec != std::errc{} || p != v->data() + v->size())
                problems.push_back(key + ": expected a non-negative integer, got '" + *v + "'");
            else
                dst = n;
        };

        std::map<std::string, std::string*> paths{
            {"index", &c.index},         {"ngrams", &c.ngrams},         {"lexicon", &c.lexicon},
            {"wordlists", &c.wordlists}, {"seed_ncs", &c.seed_ncs},     {"seed_patterns", &c.seed_patterns},
            {"seed_pairs", &c.seed_pairs}, {"out_dir", &c.out_dir},     {"resume", &c.resume}};
        for (const auto& [key, dst] : paths) {
            const auto v = take(key);
            if (!v || v->empty()) {
                if (key != "resume") problems.push_back(key + ": required");
                continue;
            }
            const std::filesystem::path p(*v);
            *dst = (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
        }
        if (const auto s = take("strategy")) {
            try {
                c.engine.strategy = parse_strategy(*s);
            } catch (const Error& e) {
                problems.push_back(std::string("strategy: ") + e.what());
            }
        }
        number("n_threshold", c.engine.n_threshold);
        number("m_threshold", c.engine.m_threshold);
        number("max_iterations", c.engine.max_iterations);
        number("top_k_patterns", c.engine.top_k_patterns);
        number("top_k_nc_seeds", c.engine.top_k_nc_seeds);
        number("snippet_cap", c.engine.snippet_cap);
        number("min_ngram_count", c.engine.min_ngram_count);
        number("snippet_radius", c.snippet_radius);
        for (const auto& [k, v] : kv) problems.push_back(k + ": unknown key");

        for (auto& p : c.engine.problems()) problems.push_back(std::move(p));
        for (const auto* key : {"index", "ngrams", "lexicon", "wordlists", "seed_ncs", "seed_patterns", "seed_pairs"}) {
            const auto& path = *paths.at(key);
            if (!path.empty() && !std::filesystem::is_regular_file(path))
                problems.push_back(std::string(key) + ": no such file '" + path + "'");
        }
        if (!c.resume.empty() && !std::filesystem::is_regular_file(c.resume))
            problems.push_back("resume: no such file '" + c.resume + "'");
        if (!problems.empty()) throw ConfigError(std::move(problems));
        return c;
    }

    static RunConfig load(const std::string& path) {
        std::string content;
        try {
            content = text::read_file(path);
        } catch (const Error& e) {
            throw ConfigError({e.what()});
        }
        return parse(content, path, std::filesystem::path(path).parent_path());
    }

    /// Settings that determine the output; worker count excluded.
    ojson snapshot() const {
        return ojson{{"index", index},
                     {"ngrams", ngrams},
                     {"lexicon", lexicon},
                     {"wordlists", wordlists},
                     {"seed_ncs", seed_ncs},
                     {"seed_patterns", seed_patterns},
                     {"seed_pairs", seed_pairs},
                     {"resume", resume},
                     {"strategy", std::string(to_string(engine.strategy))},
                     {"n_threshold", engine.n_threshold},
                     {"m_threshold", engine.m_threshold},
                     {"max_iterations", engine.max_iterations},
                     {"top_k_patterns", engine.top_k_patterns},
                     {"top_k_nc_seeds", engine.top_k_nc_seeds},
                     {"snippet_cap", engine.snippet_cap},
                     {"min_ngram_count", engine.min_ngram_count},
                     {"snippet_radius", snippet_radius}};
    }
};

inline ojson build_manifest(const RunConfig& c) {
    const auto hash = [](const std::string& p) { return sha256_hex(text::read_file(p)); };
    ojson inputs{{"index", hash(c.index)},         {"ngrams", hash(c.ngrams)},
                 {"lexicon", hash(c.lexicon)},     {"wordlists", hash(c.wordlists)},
                 {"seed_ncs", hash(c.seed_ncs)},   {"seed_patterns", hash(c.seed_patterns)},
                 {"seed_pairs", hash(c.seed_pairs)}};
    if (!c.resume.empty()) inputs["resume"] = hash(c.resume);
    return ojson{{"tool", "nch"}, {"version", std::string(kToolVersion)}, {"config", c.snapshot()},
                 {"sha256", std::move(inputs)}};
}

inline std::string pattern_rows_tsv(const HarvestState& s) {
    const auto sup = s.support_by_pattern();
    std::string out;
    for (const auto& [p, it] : s.active_patterns) {
        std::uint64_t total = 0;
        std::size_t distinct = 0;
        if (const auto f = sup.find(p); f != sup.end()) {
            distinct = f->second.size();
            for (const auto& [nc, n] : f->second) total += n;
        }
        out += p.verb.str() + '\t' + std::string(to_string(p.voice)) + '\t' +
               (p.has_preposition() ? p.preposition : "-") + '\t' + std::to_string(total) + '\t' +
               std::to_string(distinct) + '\n';
    }
    return out;
}

inline std::string nc_rows_tsv(const HarvestState& s, const Lexicon& lex) {
    std::string out;
    for (const auto& [pair, n] : s.pairs)
        out += pair.nc.modifier.str() + '\t' + pair.nc.head.str() + '\t' + lex.display(pair.pattern) + '\t' +
               std::to_string(n) + '\n';
    return out;
}

struct PipelineOptions {
    unsigned workers = 1;
    DatasetFormat format = DatasetFormat::jsonl;
    std::string debug_queries;  // path; empty disables the query log
};

struct PipelineSummary {
    HarvestState state;
    std::vector<IterationReport> reports;
};

/// Loads every input, writes the manifest, runs the engine and writes
/// checkpoints, reports, final state and dataset under `out_dir`.
inline PipelineSummary run_pipeline(const RunConfig& cfg, const PipelineOptions& opt) {
    namespace fs = std::filesystem;
    const auto lex = Lexicon::load(cfg.lexicon);
    const auto wl = WordLists::load(cfg.wordlists);
    auto seeds = load_seeds(cfg.seed_ncs, cfg.seed_patterns, cfg.seed_pairs);
    if (const auto bad = seeds.check_lexicon(lex); !bad.empty()) throw ConfigError(bad);
    auto index = CorpusIndex::load(cfg.index);
    index.set_snippet_radius(cfg.snippet_radius);
    const auto ngrams = NGramTable::load(cfg.ngrams);
    std::optional<HarvestState> resume;
    if (!cfg.resume.empty()) resume = load_state(cfg.resume);

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "checkpoints");
    write_file((out / "manifest.json").string(), build_manifest(cfg).dump(2) + "\n");

    BootstrapConfig ec = cfg.engine;
    ec.workers = opt.workers;
    BootstrapEngine engine(index, lex, wl, ngrams, ec, std::move(seeds));

    engine.hooks.on_checkpoint = [&](const HarvestState& st, HarvestStep step) {
        const auto name = "iter" + std::to_string(st.iteration) + "_step" +
                          (step == HarvestStep::nc_extraction ? "1" : "2") + ".json";
        write_file((out / "checkpoints" / name).string(), serialize_state(st));
    };
    std::ofstream qlog;
    if (!opt.debug_queries.empty()) {
        qlog.open(opt.debug_queries, std::ios::binary | std::ios::trunc);
        if (!qlog) throw Error("cannot write '" + opt.debug_queries + "'");
        engine.hooks.on_query = [&](HarvestStep step, const GeneratedQuery& q, std::size_t n) {
            qlog << to_string(step) << '\t' << q.query.str() << '\t' << n << '\n';
        };
    }

    auto result = resume ? engine.run_from(*resume) : engine.run();

    std::string reports;
    for (const auto& r : result.reports) reports += report_to_json(r).dump() + "\n";
    write_file((out / "reports.jsonl").string(), reports);
    write_file((out / "state.json").string(), serialize_state(result.state));
    write_file((out / "ncs.tsv").string(), nc_rows_tsv(result.state, lex));
    write_file((out / "patterns.tsv").string(), pattern_rows_tsv(result.state));
    const auto ext = opt.format == DatasetFormat::tsv ? "dataset.tsv" : "dataset.jsonl";
    write_file((out / ext).string(), emit_dataset(result.state, lex, opt.format));
    return {std::move(result.state), std::move(result.reports)};
}

} // namespace ncharvest

#endif
