#ifndef NCHARVEST_ANALYSIS_HPP
#define NCHARVEST_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ncharvest/bootstrap.hpp"
#include "ncharvest/lexicon.hpp"
#include "ncharvest/ngram_table.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

/// 2 c(mod head) / (c(mod) + c(head)).
inline double dice(std::uint64_t c_mod, std::uint64_t c_head, std::uint64_t c_joint) {
    if (c_mod == 0 || c_head == 0) throw Error("dice: unigram counts must be positive");
    if (c_joint > std::min(c_mod, c_head)) throw Error("dice: bigram count exceeds a unigram count");
    return 2.0 * static_cast<double>(c_joint) / (static_cast<double>(c_mod) + static_cast<double>(c_head));
}

inline double dice(const NounCompound& nc, const NGramTable& ngrams) {
    const auto m = ngrams.count({nc.modifier.str()});
    const auto h = ngrams.count({nc.head.str()});
    if (m == 0 || h == 0) throw Error("dice: no unigram count for a component of '" + nc.str() + "'");
    return dice(m, h, ngrams.count({nc.modifier.str(), nc.head.str()}));
}

/// Binary correctness judgments keyed by item id.
struct JudgmentFile {
    std::map<std::string, bool> labels;

    std::size_t size() const { return labels.size(); }

    /// `item_id<TAB>correct|incorrect` lines.
    static JudgmentFile parse(std::string_view content, const std::string& source = "<judgments>") {
        JudgmentFile f;
        std::size_t lineno = 0;
        for (const auto& raw : text::split(content, '\n')) {
            ++lineno;
            std::string_view line = raw;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (text::is_comment_or_blank(line)) continue;
            const auto where = source + ":" + std::to_string(lineno) + ": ";
            const auto tab = line.rfind('\t');
            if (tab == std::string_view::npos) throw ParseError(where + "expected item_id<TAB>label");
            const std::string id(text::trim(line.substr(0, tab)));
            const auto label = text::to_lower(text::trim(line.substr(tab + 1)));
            if (id.empty()) throw ParseError(where + "empty item id");
            bool ok = false;
            if (label == "correct") ok = true;
            else if (label != "incorrect") throw ParseError(where + "label must be correct or incorrect");
            if (!f.labels.emplace(id, ok).second) throw ParseError(where + "duplicate item id '" + id + "'");
        }
        return f;
    }

    static JudgmentFile load(const std::string& path) { return parse(text::read_file(path), path); }
};

/// Items present in exactly one of the files.
inline std::vector<std::string> mismatched_ids(const JudgmentFile& a, const JudgmentFile& b) {
    std::vector<std::string> out;
    for (const auto& [id, l] : a.labels)
        if (!b.labels.count(id)) out.push_back(id);
    for (const auto& [id, l] : b.labels)
        if (!a.labels.count(id)) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

/// Two-label Cohen's kappa with chance agreement from the marginals.
inline double cohen_kappa(const JudgmentFile& a, const JudgmentFile& b) {
    if (const auto bad = mismatched_ids(a, b); !bad.empty())
        throw Error("cohen_kappa: item ids differ (" + std::to_string(bad.size()) + " unmatched, first '" +
                    bad.front() + "')");
    if (a.size() == 0) throw Error("cohen_kappa: no items");
    std::uint64_t agree = 0, a_yes = 0, b_yes = 0;
    for (const auto& [id, la] : a.labels) {
        const bool lb = b.labels.at(id);
        agree += la == lb;
        a_yes += la;
        b_yes += lb;
    }
    const double n = static_cast<double>(a.size());
    const double po = static_cast<double>(agree) / n;
    const double pa = static_cast<double>(a_yes) / n;
    const double pb = static_cast<double>(b_yes) / n;
    const double pe = pa * pb + (1.0 - pa) * (1.0 - pb);
    if (pe == 1.0) {
        if (po == 1.0) return 1.0;
        throw Error("cohen_kappa: undefined (chance agreement is 1)");
    }
    return (po - pe) / (1.0 - pe);
}

struct DiceBin {
    double lower = 0;
    double upper = 0;
    std::size_t n = 0;
    std::size_t correct = 0;

    /// Percentage; 0 for empty bins.
    double accuracy() const { return n == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(n); }
};

struct JudgedValue {
    double dice = 0;
    bool correct = false;
};

/// Equal-width bins over [0,1]; a value of exactly 1 falls in the last bin.
inline std::vector<DiceBin> bin_accuracy_by_dice(const std::vector<JudgedValue>& items, std::size_t bins) {
    if (bins < 1) throw Error("bin count must be at least 1");
    std::vector<DiceBin> out(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        out[i].lower = static_cast<double>(i) / static_cast<double>(bins);
        out[i].upper = static_cast<double>(i + 1) / static_cast<double>(bins);
    }
    for (const auto& it : items) {
        if (!(it.dice >= 0.0 && it.dice <= 1.0)) throw Error("dice value outside [0,1]");
        const auto idx = std::min(bins - 1, static_cast<std::size_t>(std::floor(it.dice * static_cast<double>(bins))));
        ++out[idx].n;
        out[idx].correct += it.correct;
    }
    return out;
}

/// Joins judgments (item id "modifier head") with Dice values. Unknown ids
/// are collected into `missing` when given, else reported as an error.
inline std::vector<JudgedValue> judged_dice(const HarvestState& state, const JudgmentFile& j,
                                            const NGramTable& ngrams, std::vector<std::string>* missing = nullptr) {
    std::map<std::string, NounCompound> by_id;
    for (const auto& [nc, it] : state.accepted_ncs) by_id.emplace(nc.str(), nc);
    std::vector<JudgedValue> out;
    std::vector<std::string> unknown;
    for (const auto& [id, ok] : j.labels) {
        const auto f = by_id.find(id);
        if (f == by_id.end()) {
            unknown.push_back(id);
            continue;
        }
        out.push_back({dice(f->second, ngrams), ok});
    }
    if (!unknown.empty()) {
        if (!missing) throw Error("judged item '" + unknown.front() + "' is not an accepted NC");
        *missing = std::move(unknown);
    }
    return out;
}

inline std::string bin_table_tsv(const std::vector<DiceBin>& bins) {
    std::ostringstream os;
    os << std::fixed;
    os << "bin\tlower\tupper\tn\tcorrect\taccuracy\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const auto& b = bins[i];
        os << (i + 1) << '\t' << std::setprecision(3) << b.lower << '\t' << b.upper << '\t' << b.n << '\t'
           << b.correct << '\t' << std::setprecision(1) << b.accuracy() << '\n';
    }
    return os.str();
}

inline std::string format_kappa(double k) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << k;
    return os.str();
}

/// An NC with its paraphrasing patterns, highest support first.
struct NCDistribution {
    NounCompound nc;
    std::vector<std::pair<Pattern, std::uint64_t>> weights;
};

/// Records for every NC that has at least one pair, ordered by NC; within a
/// record by descending support, then display string.
inline std::vector<NCDistribution> distributions(const HarvestState& state, const Lexicon& lex) {
    std::map<NounCompound, std::vector<std::pair<Pattern, std::uint64_t>>> m;
    for (const auto& [pair, n] : state.pairs) m[pair.nc].emplace_back(pair.pattern, n);
    std::vector<NCDistribution> out;
    for (auto& [nc, w] : m) {
        std::sort(w.begin(), w.end(), [&](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            const auto da = lex.display(a.first), db = lex.display(b.first);
            return da != db ? da < db : a.first < b.first;
        });
        out.push_back({nc, std::move(w)});
    }
    return out;
}

enum class DatasetFormat { tsv, jsonl };

inline DatasetFormat parse_dataset_format(std::string_view s) {
    if (s == "tsv") return DatasetFormat::tsv;
    if (s == "jsonl") return DatasetFormat::jsonl;
    throw Error("unknown format '" + std::string(s) + "' (expected tsv or jsonl)");
}

/// TSV: `modifier<TAB>head<TAB>pattern:support,...`; JSONL: one object per NC.
inline std::string emit_dataset(const HarvestState& state, const Lexicon& lex, DatasetFormat format) {
    if (state.accepted_ncs.empty()) throw Error("emit_dataset: empty state");
    std::string out;
    for (const auto& d : distributions(state, lex)) {
        if (format == DatasetFormat::tsv) {
            out += d.nc.modifier.str() + '\t' + d.nc.head.str() + '\t';
            for (std::size_t i = 0; i < d.weights.size(); ++i) {
                if (i) out += ',';
                out += lex.display(d.weights[i].first) + ':' + std::to_string(d.weights[i].second);
            }
            out += '\n';
        } else {
            nlohmann::ordered_json pats = nlohmann::ordered_json::array();
            for (const auto& [p, n] : d.weights)
                pats.push_back({{"pattern", lex.display(p)},
                                {"verb", p.verb.str()},
                                {"voice", std::string(to_string(p.voice))},
                                {"preposition", p.preposition},
                                {"support", n}});
            nlohmann::ordered_json rec{{"modifier", d.nc.modifier.str()}, {"head", d.nc.head.str()},
                                       {"patterns", std::move(pats)}};
            out += rec.dump() + '\n';
        }
    }
    return out;
}

} // namespace ncharvest

#endif
