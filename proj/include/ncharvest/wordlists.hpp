#ifndef NCHARVEST_WORDLISTS_HPP
#define NCHARVEST_WORDLISTS_HPP

#include <set>
#include <string>
#include <string_view>

#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

/// Closed-class word lists used by the heuristic phrase segmenter and the
/// verb-phrase extractor. Loaded from `class<TAB>word` lines.
struct WordLists {
    std::set<std::string> prepositions;
    std::set<std::string> coordinating_conjunctions;
    std::set<std::string> subordinating_conjunctions;
    std::set<std::string> relative_pronouns;
    std::set<std::string> modals;
    std::set<std::string> auxiliaries;
    std::set<std::string> determiners;

    static WordLists load(const std::string& path) {
        return parse(text::read_file(path), path);
    }

    static WordLists parse(std::string_view content, const std::string& source = "<wordlists>") {
        WordLists wl;
        std::size_t lineno = 0;
        for (const auto& raw : text::split(content, '\n')) {
            ++lineno;
            const auto line = text::trim(raw);
            if (text::is_comment_or_blank(line)) continue;
            const auto cols = text::split(line, '\t');
            const auto where = source + ":" + std::to_string(lineno) + ": ";
            if (cols.size() != 2 || cols[1].empty())
                throw ParseError(where + "expected class<TAB>word");
            auto* set = wl.by_name(cols[0]);
            if (set == nullptr) throw ParseError(where + "unknown word class '" + cols[0] + "'");
            set->insert(text::to_lower(cols[1]));
        }
        return wl;
    }

    bool is_preposition(std::string_view w) const { return prepositions.count(std::string(w)) > 0; }
    bool is_relative_pronoun(std::string_view w) const { return relative_pronouns.count(std::string(w)) > 0; }
    bool is_modal(std::string_view w) const { return modals.count(std::string(w)) > 0; }
    bool is_auxiliary(std::string_view w) const { return auxiliaries.count(std::string(w)) > 0; }
    bool is_determiner(std::string_view w) const { return determiners.count(std::string(w)) > 0; }

    /// Phrase boundary for argument segmentation: punctuation, coordinating
    /// or subordinating conjunction, preposition or relative pronoun.
    bool is_delimiter(std::string_view w) const {
        const std::string s(w);
        return text::is_punctuation(w) || prepositions.count(s) || coordinating_conjunctions.count(s) ||
               subordinating_conjunctions.count(s) || relative_pronouns.count(s);
    }

private:
    std::set<std::string>* by_name(std::string_view name) {
        if (name == "preposition") return &prepositions;
        if (name == "coordinating_conjunction") return &coordinating_conjunctions;
        if (name == "subordinating_conjunction") return &subordinating_conjunctions;
        if (name == "relative_pronoun") return &relative_pronouns;
        if (name == "modal") return &modals;
        if (name == "auxiliary") return &auxiliaries;
        if (name == "determiner") return &determiners;
        return nullptr;
    }
};

} // namespace ncharvest

#endif
