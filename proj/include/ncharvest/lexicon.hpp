#ifndef NCHARVEST_LEXICON_HPP
#define NCHARVEST_LEXICON_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

enum class PartOfSpeech : std::uint8_t { noun = 1, verb = 2, adjective = 4, other = 8 };

/// Bit set over PartOfSpeech.
class PosSet {
public:
    constexpr PosSet() = default;
    constexpr PosSet(std::initializer_list<PartOfSpeech> items) {
        for (auto p : items) bits_ |= static_cast<std::uint8_t>(p);
    }
    constexpr bool has(PartOfSpeech p) const { return (bits_ & static_cast<std::uint8_t>(p)) != 0; }
    constexpr void add(PartOfSpeech p) { bits_ |= static_cast<std::uint8_t>(p); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool only(PartOfSpeech p) const { return bits_ == static_cast<std::uint8_t>(p); }
    friend constexpr bool operator==(PosSet, PosSet) = default;

private:
    std::uint8_t bits_ = 0;
};

struct VerbForms {
    std::string third_singular;
    std::string plural_present;
    std::string past;
    std::string past_plural;      // differs from `past` only for "be"
    std::string past_participle;
    std::string gerund;
    std::vector<std::string> extra;  // e.g. "am"
};

struct LexiconEntry {
    Lemma lemma;
    PosSet pos;
    std::optional<std::string> noun_plural;
    std::optional<VerbForms> verb_forms;
};

struct NounForms {
    std::string singular;
    std::string plural;
};

struct LemmaResult {
    Lemma lemma;
    /// False when the word (or a suffix-stripped variant) matched no entry.
    bool known = false;
};

enum class GrammaticalNumber : std::uint8_t { singular, plural };
enum class Tense : std::uint8_t { present, past, present_perfect };

/// One surface realisation of a pattern. `verb_index` points at the token
/// carrying the pattern's verb lemma (the participle for passives).
struct InflectedPattern {
    std::vector<std::string> surface;
    Voice voice = Voice::active;
    GrammaticalNumber number = GrammaticalNumber::singular;
    Tense tense = Tense::present;
    std::size_t verb_index = 0;

    std::string str() const { return text::join(surface); }
};

/// Which slot of a verb paradigm a surface form fills. A surface may fill
/// several (regular past and participle coincide).
enum class VerbSlot : std::uint8_t {
    base = 1, third = 2, past = 4, participle = 8, gerund = 16, extra = 32
};

struct VerbReading {
    std::string lemma;
    std::uint8_t slots = 0;
    bool has(VerbSlot s) const { return (slots & static_cast<std::uint8_t>(s)) != 0; }
};

namespace morph {

inline bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

inline bool ends_with(std::string_view s, std::string_view suf) {
    return s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf;
}

inline bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

/// Regular -s/-es/-ies suffixation (noun plural and verb third person).
inline std::string add_s(std::string_view w) {
    std::string s(w);
    if (ends_with(s, "s") || ends_with(s, "x") || ends_with(s, "z") || ends_with(s, "ch") ||
        ends_with(s, "sh"))
        return s + "es";
    if (s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2]))
        return s.substr(0, s.size() - 1) + "ies";
    return s + "s";
}

inline std::string add_ed(std::string_view w) {
    std::string s(w);
    if (s.back() == 'e') return s + "d";
    if (s.size() >= 2 && s.back() == 'y' && !is_vowel(s[s.size() - 2]))
        return s.substr(0, s.size() - 1) + "ied";
    return s + "ed";
}

inline std::string add_ing(std::string_view w) {
    std::string s(w);
    if (ends_with(s, "ie")) return s.substr(0, s.size() - 2) + "ying";
    if (s.size() > 2 && s.back() == 'e' && !ends_with(s, "ee") && !ends_with(s, "ye") &&
        !ends_with(s, "oe"))
        return s.substr(0, s.size() - 1) + "ing";
    return s + "ing";
}

/// Words that look inflected but are not, for the suffix fallback.
inline bool is_uninflected_exception(std::string_view w) {
    static constexpr std::array<std::string_view, 14> words{
        "series", "species", "news", "means", "always", "perhaps", "thus",
        "gas", "bias", "lens", "this", "his", "yes", "was"};
    return std::find(words.begin(), words.end(), w) != words.end();
}

/// Candidate base forms after removing one inflectional suffix, most
/// plausible first. Empty when no rule applies.
inline std::vector<std::string> strip_candidates(std::string_view w, PartOfSpeech pos) {
    std::vector<std::string> out;
    if (is_uninflected_exception(w)) return out;
    const std::string s(w);
    const auto stem = [&](std::size_t n) { return s.substr(0, s.size() - n); };

    if (ends_with(s, "ies") && s.size() > 4) {
        out.push_back(stem(3) + "y");
    } else if (ends_with(s, "es") && s.size() > 3 &&
               (ends_with(s, "sses") || ends_with(s, "xes") || ends_with(s, "zes") ||
                ends_with(s, "ches") || ends_with(s, "shes") || ends_with(s, "oes"))) {
        out.push_back(stem(2));
        out.push_back(stem(1));
    } else if (ends_with(s, "s") && s.size() > 3 && !ends_with(s, "ss") && !ends_with(s, "us") &&
               !ends_with(s, "is")) {
        out.push_back(stem(1));
    }
    if (pos != PartOfSpeech::verb || !out.empty()) return out;

    if (ends_with(s, "ied") && s.size() > 4) {
        out.push_back(stem(3) + "y");
    } else if (ends_with(s, "ed") && !ends_with(s, "eed") && s.size() > 4 && has_vowel(stem(2))) {
        const std::string base = stem(2);
        const bool doubled = base.size() >= 2 && base.back() == base[base.size() - 2] &&
                             !is_vowel(base.back()) && base.back() != 'l' && base.back() != 's';
        if (doubled) out.push_back(base.substr(0, base.size() - 1));
        out.push_back(base);
        out.push_back(stem(1));
    } else if (ends_with(s, "ing") && s.size() > 5 && has_vowel(stem(3))) {
        const std::string base = stem(3);
        const bool doubled = base.size() >= 2 && base.back() == base[base.size() - 2] &&
                             !is_vowel(base.back()) && base.back() != 'l' && base.back() != 's';
        if (doubled) out.push_back(base.substr(0, base.size() - 1));
        out.push_back(base);
        out.push_back(base + "e");
    }
    return out;
}

} // namespace morph

/// Noun/verb recognition, lemmatisation and inflection backed by a bundled
/// tab-separated lexicon file. Immutable after construction.
///
/// File format, one entry per line (`#` lines are comments):
///
///     lemma<TAB>pos[,pos...]<TAB>form=value[,form=value...]
///
/// pos is one of noun, verb, adjective, other. Form names: plural (noun);
/// third, present_plural, past, past_plural, participle, gerund, other
/// (verb). Forms that are not listed follow the regular rules.
class Lexicon {
public:
    Lexicon() = default;

    static Lexicon load(const std::string& path) {
        return parse(text::read_file(path), path);
    }

    static Lexicon parse(std::string_view content, const std::string& source = "<lexicon>") {
        Lexicon lex;
        std::size_t lineno = 0;
        for (const auto& raw : text::split(content, '\n')) {
            ++lineno;
            std::string line = raw;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (text::is_comment_or_blank(line)) continue;
            const auto where = source + ":" + std::to_string(lineno) + ": ";
            const auto cols = text::split(line, '\t');
            if (cols.size() < 2 || cols.size() > 3)
                throw ParseError(where + "expected 2 or 3 tab-separated columns");
            lex.add_entry(parse_entry(cols, where), where);
        }
        if (lex.entries_.empty()) throw ParseError(source + ": lexicon is empty");
        lex.build_indexes();
        return lex;
    }

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, LexiconEntry>& entries() const { return entries_; }

    const LexiconEntry* find(std::string_view lemma) const {
        const auto it = entries_.find(std::string(lemma));
        return it == entries_.end() ? nullptr : &it->second;
    }

    bool has_lemma(std::string_view lemma, PartOfSpeech pos) const {
        const auto* e = find(lemma);
        return e != nullptr && e->pos.has(pos);
    }

    /// Base form of `word` for the given part of speech. Lowercases the input.
    /// Words outside the lexicon go through suffix stripping; the result is
    /// flagged `known = false` when no entry matched.
    LemmaResult lemmatize(std::string_view word, PartOfSpeech pos) const {
        if (word.empty()) throw Error("lemmatize: empty word");
        if (pos != PartOfSpeech::noun && pos != PartOfSpeech::verb)
            throw Error("lemmatize: only noun and verb are supported");
        std::string w = text::to_lower(word);
        if (auto hit = lookup(w, pos)) return {Lemma(*hit), true};
        // Bounded: every step shortens the word.
        while (true) {
            const auto cands = morph::strip_candidates(w, pos);
            if (cands.empty()) return {Lemma(w), false};
            for (const auto& c : cands)
                if (auto hit = lookup(c, pos)) return {Lemma(*hit), true};
            if (cands.front() == w || cands.front().empty()) return {Lemma(w), false};
            w = cands.front();
        }
    }

    /// True iff the lemmatised word is listed as a noun.
    bool is_noun(std::string_view word) const {
        if (word.empty()) throw Error("is_noun: empty word");
        if (text::is_punctuation(word)) return false;
        const auto r = lemmatize(word, PartOfSpeech::noun);
        return r.known && has_lemma(r.lemma.str(), PartOfSpeech::noun);
    }

    bool is_adjective(std::string_view word) const {
        return has_lemma(text::to_lower(word), PartOfSpeech::adjective);
    }

    /// Every verb paradigm the surface form belongs to; empty if none.
    const std::vector<VerbReading>& verb_readings(std::string_view surface) const {
        static const std::vector<VerbReading> none;
        const auto it = verb_surface_.find(std::string(surface));
        return it == verb_surface_.end() ? none : it->second;
    }

    bool is_verb_form(std::string_view surface) const { return !verb_readings(surface).empty(); }

    bool is_past_participle(std::string_view surface) const {
        const auto& rs = verb_readings(surface);
        return std::any_of(rs.begin(), rs.end(),
                           [](const VerbReading& r) { return r.has(VerbSlot::participle); });
    }

    /// Singular and plural of a noun lemma; throws for non-nouns.
    NounForms noun_forms(const Lemma& lemma) const {
        const auto* e = find(lemma.str());
        if (e == nullptr || !e->pos.has(PartOfSpeech::noun))
            throw Error("noun_forms: '" + lemma.str() + "' is not a noun in the lexicon");
        return {lemma.str(), *e->noun_plural};
    }

    const VerbForms& verb_forms(const Lemma& lemma) const {
        const auto* e = find(lemma.str());
        if (e == nullptr || !e->pos.has(PartOfSpeech::verb))
            throw Error("'" + lemma.str() + "' is not a verb in the lexicon");
        return *e->verb_forms;
    }

    /// Citation form such as "be made of".
    std::string display(const Pattern& p) const {
        return p.display(verb_forms(p.verb).past_participle);
    }

    /// Surface realisations of a pattern over number x tense.
    ///
    /// Active (5): third-singular present, plural present, past,
    /// "has" + participle, "have" + participle.
    /// Passive (6): is / are / was / were / has been / have been + participle.
    /// The preposition, if any, is appended to every surface.
    std::vector<InflectedPattern> inflect_pattern(const Pattern& p) const {
        const auto& vf = verb_forms(p.verb);
        const auto& be = verb_forms(Lemma("be"));
        const auto& have = verb_forms(Lemma("have"));
        const auto prep = text::split_words(p.preposition);

        std::vector<InflectedPattern> out;
        const auto add = [&](std::vector<std::string> words, GrammaticalNumber n, Tense t) {
            InflectedPattern ip;
            ip.voice = p.voice;
            ip.number = n;
            ip.tense = t;
            ip.verb_index = words.size() - 1;
            ip.surface = std::move(words);
            ip.surface.insert(ip.surface.end(), prep.begin(), prep.end());
            out.push_back(std::move(ip));
        };
        using N = GrammaticalNumber;
        if (p.voice == Voice::active) {
            add({vf.third_singular}, N::singular, Tense::present);
            add({vf.plural_present}, N::plural, Tense::present);
            add({vf.past}, N::singular, Tense::past);
            add({have.third_singular, vf.past_participle}, N::singular, Tense::present_perfect);
            add({have.plural_present, vf.past_participle}, N::plural, Tense::present_perfect);
        } else {
            const auto& pp = vf.past_participle;
            add({be.third_singular, pp}, N::singular, Tense::present);
            add({be.plural_present, pp}, N::plural, Tense::present);
            add({be.past, pp}, N::singular, Tense::past);
            add({be.past_plural, pp}, N::plural, Tense::past);
            add({have.third_singular, be.past_participle, pp}, N::singular, Tense::present_perfect);
            add({have.plural_present, be.past_participle, pp}, N::plural, Tense::present_perfect);
        }
        return out;
    }

private:
    static PosSet parse_pos(std::string_view s, const std::string& where) {
        PosSet set;
        for (const auto& p : text::split(s, ',')) {
            if (p == "noun") set.add(PartOfSpeech::noun);
            else if (p == "verb") set.add(PartOfSpeech::verb);
            else if (p == "adjective") set.add(PartOfSpeech::adjective);
            else if (p == "other") set.add(PartOfSpeech::other);
            else throw ParseError(where + "unknown part of speech '" + p + "'");
        }
        return set;
    }

    static LexiconEntry parse_entry(const std::vector<std::string>& cols, const std::string& where) {
        LexiconEntry e;
        const auto lemma_text = std::string(text::trim(cols[0]));
        if (lemma_text.empty() || lemma_text != text::to_lower(lemma_text))
            throw ParseError(where + "lemma must be non-empty lowercase");
        try {
            e.lemma = Lemma(lemma_text);
        } catch (const Error& err) {
            throw ParseError(where + err.what());
        }
        e.pos = parse_pos(text::trim(cols[1]), where);

        std::map<std::string, std::string> forms;
        if (cols.size() == 3 && !text::trim(cols[2]).empty()) {
            for (const auto& kv : text::split(text::trim(cols[2]), ',')) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
                    throw ParseError(where + "malformed form '" + kv + "'");
                const auto key = kv.substr(0, eq);
                static const std::array<std::string_view, 8> known{
                    "plural", "third", "present_plural", "past", "past_plural",
                    "participle", "gerund", "other"};
                if (std::find(known.begin(), known.end(), key) == known.end())
                    throw ParseError(where + "unknown form name '" + key + "'");
                forms[key] = kv.substr(eq + 1);
            }
        }
        const auto get = [&](const char* k, std::string dflt) {
            const auto it = forms.find(k);
            return it == forms.end() ? dflt : it->second;
        };
        const auto& l = e.lemma.str();
        if (e.pos.has(PartOfSpeech::noun)) e.noun_plural = get("plural", morph::add_s(l));
        if (e.pos.has(PartOfSpeech::verb)) {
            VerbForms vf;
            vf.third_singular = get("third", morph::add_s(l));
            vf.plural_present = get("present_plural", l);
            vf.past = get("past", morph::add_ed(l));
            vf.past_plural = get("past_plural", vf.past);
            vf.past_participle = get("participle", vf.past);
            vf.gerund = get("gerund", morph::add_ing(l));
            if (forms.count("other")) vf.extra.push_back(forms["other"]);
            e.verb_forms = std::move(vf);
        } else if (forms.count("third") || forms.count("past") || forms.count("participle")) {
            throw ParseError(where + "verb forms given for a non-verb entry");
        }
        if (!e.pos.has(PartOfSpeech::noun) && forms.count("plural"))
            throw ParseError(where + "plural given for a non-noun entry");
        return e;
    }

    void add_entry(LexiconEntry e, const std::string& where) {
        const auto key = e.lemma.str();
        if (entries_.count(key)) throw ParseError(where + "duplicate lemma '" + key + "'");
        entries_.emplace(key, std::move(e));
    }

    void build_indexes() {
        for (const auto& [lemma, e] : entries_) {
            if (e.noun_plural) {
                noun_surface_[lemma].push_back(lemma);
                noun_surface_[*e.noun_plural].push_back(lemma);
            }
            if (e.verb_forms) {
                const auto& vf = *e.verb_forms;
                const auto mark = [&](const std::string& s, VerbSlot slot) {
                    auto& readings = verb_surface_[s];
                    auto it = std::find_if(readings.begin(), readings.end(),
                                           [&](const VerbReading& r) { return r.lemma == lemma; });
                    if (it == readings.end()) {
                        readings.push_back({lemma, 0});
                        it = readings.end() - 1;
                    }
                    it->slots |= static_cast<std::uint8_t>(slot);
                };
                mark(lemma, VerbSlot::base);
                mark(vf.plural_present, VerbSlot::base);
                mark(vf.third_singular, VerbSlot::third);
                mark(vf.past, VerbSlot::past);
                mark(vf.past_plural, VerbSlot::past);
                mark(vf.past_participle, VerbSlot::participle);
                mark(vf.gerund, VerbSlot::gerund);
                for (const auto& x : vf.extra) mark(x, VerbSlot::extra);
            }
        }
        for (auto& [s, lemmas] : noun_surface_) {
            std::sort(lemmas.begin(), lemmas.end());
            lemmas.erase(std::unique(lemmas.begin(), lemmas.end()), lemmas.end());
        }
        for (auto& [s, rs] : verb_surface_)
            std::sort(rs.begin(), rs.end(),
                      [](const VerbReading& a, const VerbReading& b) { return a.lemma < b.lemma; });
    }

    /// Direct lexicon hit. A word that is itself a lemma of the requested
    /// part of speech maps to itself, which keeps lemmatisation idempotent.
    std::optional<std::string> lookup(const std::string& w, PartOfSpeech pos) const {
        if (has_lemma(w, pos)) return w;
        if (pos == PartOfSpeech::noun) {
            const auto it = noun_surface_.find(w);
            if (it != noun_surface_.end()) return it->second.front();
        } else {
            const auto it = verb_surface_.find(w);
            if (it != verb_surface_.end()) return it->second.front().lemma;
        }
        return std::nullopt;
    }

    std::map<std::string, LexiconEntry> entries_;
    std::map<std::string, std::vector<std::string>> noun_surface_;
    std::map<std::string, std::vector<VerbReading>> verb_surface_;
};

} // namespace ncharvest

#endif
