#ifndef NCHARVEST_STATE_IO_HPP
#define NCHARVEST_STATE_IO_HPP

#include <fstream>
#include <string>

#include "json.hpp"
#include "ncharvest/bootstrap.hpp"
#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

using ojson = nlohmann::ordered_json;

inline constexpr int kStateFormatVersion = 1;

inline ojson pattern_to_json(const Pattern& p) {
    return ojson{{"verb", p.verb.str()}, {"voice", std::string(to_string(p.voice))}, {"preposition", p.preposition}};
}

inline Pattern pattern_from_json(const ojson& j) {
    return Pattern(Lemma(j.at("verb").get<std::string>()), parse_voice(j.at("voice").get<std::string>()),
                   j.at("preposition").get<std::string>());
}

inline ojson state_to_json(const HarvestState& s) {
    ojson ncs = ojson::array();
    for (const auto& [nc, it] : s.accepted_ncs)
        ncs.push_back({{"modifier", nc.modifier.str()}, {"head", nc.head.str()}, {"iteration", it}});
    ojson pats = ojson::array();
    for (const auto& [p, it] : s.active_patterns) {
        auto j = pattern_to_json(p);
        j["iteration"] = it;
        pats.push_back(std::move(j));
    }
    ojson pairs = ojson::array();
    for (const auto& [pair, n] : s.pairs) {
        ojson j{{"modifier", pair.nc.modifier.str()}, {"head", pair.nc.head.str()}};
        const auto pj = pattern_to_json(pair.pattern);
        for (const auto& [k, v] : pj.items()) j[k] = v;
        j["support"] = n;
        pairs.push_back(std::move(j));
    }
    return ojson{{"format", "ncharvest-state"}, {"version", kStateFormatVersion}, {"iteration", s.iteration},
                 {"noun_compounds", std::move(ncs)}, {"patterns", std::move(pats)}, {"pairs", std::move(pairs)}};
}

inline HarvestState state_from_json(const ojson& j) {
    try {
        if (j.at("format").get<std::string>() != "ncharvest-state") throw Error("not a state file");
        const int v = j.at("version").get<int>();
        if (v != kStateFormatVersion) throw Error("unsupported state version " + std::to_string(v));
        HarvestState s;
        s.iteration = j.at("iteration").get<int>();
        for (const auto& n : j.at("noun_compounds"))
            s.accepted_ncs.emplace(NounCompound{Lemma(n.at("modifier").get<std::string>()),
                                                Lemma(n.at("head").get<std::string>())},
                                   n.at("iteration").get<int>());
        for (const auto& p : j.at("patterns")) s.active_patterns.emplace(pattern_from_json(p), p.at("iteration").get<int>());
        for (const auto& p : j.at("pairs")) {
            NCPatternPair pair{NounCompound{Lemma(p.at("modifier").get<std::string>()),
                                            Lemma(p.at("head").get<std::string>())},
                               pattern_from_json(p)};
            s.pairs[pair] += p.at("support").get<std::uint64_t>();
        }
        const auto bad = s.inconsistencies();
        if (!bad.empty()) throw Error("inconsistent state: " + bad.front());
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed state: ") + e.what());
    }
}

inline std::string serialize_state(const HarvestState& s) { return state_to_json(s).dump(1) + "\n"; }

inline HarvestState load_state(const std::string& path) {
    try {
        return state_from_json(ojson::parse(text::read_file(path)));
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

inline ojson report_to_json(const IterationReport& r) {
    ojson per = ojson::array();
    for (const auto& [p, n] : r.ncs_per_pattern) {
        auto j = pattern_to_json(p);
        j["new_ncs"] = n;
        per.push_back(std::move(j));
    }
    return ojson{{"iteration", r.iteration},
                 {"strategy", std::string(to_string(r.strategy))},
                 {"n_threshold", r.n_threshold},
                 {"m_threshold", r.m_threshold},
                 {"new_ncs", r.new_ncs},
                 {"new_patterns", r.new_patterns},
                 {"new_pairs", r.new_pairs},
                 {"queries_issued", r.queries_issued()},
                 {"step1_queries", r.step1_queries},
                 {"step2_queries", r.step2_queries},
                 {"ncs_per_pattern", std::move(per)}};
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
    if (!out) throw Error("write failed for '" + path + "'");
}

} // namespace ncharvest

#endif
