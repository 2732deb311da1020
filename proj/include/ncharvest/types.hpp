#ifndef NCHARVEST_TYPES_HPP
#define NCHARVEST_TYPES_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ncharvest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file; the message carries `file:line:` diagnostics.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A lowercase single-word base form.
class Lemma {
public:
    Lemma() = default;

    explicit Lemma(std::string text) : text_(std::move(text)) {
        if (text_.empty())
            throw Error("lemma must be non-empty");
        for (const char c : text_) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                throw Error("lemma must not contain whitespace: '" + text_ + "'");
            if (c >= 'A' && c <= 'Z')
                throw Error("lemma must be lowercase: '" + text_ + "'");
        }
    }

    const std::string& str() const noexcept { return text_; }
    bool empty() const noexcept { return text_.empty(); }

    friend auto operator<=>(const Lemma&, const Lemma&) = default;
    friend bool operator==(const Lemma&, const Lemma&) = default;

private:
    std::string text_;
};

enum class Voice : std::uint8_t { active, passive };

inline std::string_view to_string(Voice v) {
    return v == Voice::active ? "active" : "passive";
}

inline Voice parse_voice(std::string_view s) {
    if (s == "active") return Voice::active;
    if (s == "passive") return Voice::passive;
    throw Error("unknown voice '" + std::string(s) + "' (expected active or passive)");
}

/// A paraphrasing predicate: verb lemma, voice and an optional trailing
/// preposition (possibly a particle + preposition such as "up of").
/// An empty preposition means none.
struct Pattern {
    Lemma verb;
    Voice voice = Voice::active;
    std::string preposition;

    Pattern() = default;

    Pattern(Lemma v, Voice vc, std::string prep = {})
        : verb(std::move(v)), voice(vc), preposition(std::move(prep)) {
        if (verb.str() == "be" && voice == Voice::active)
            throw Error("bare copular pattern 'be' is not a valid pattern");
        for (const char c : preposition)
            if (c >= 'A' && c <= 'Z')
                throw Error("pattern preposition must be lowercase: '" + preposition + "'");
    }

    bool has_preposition() const noexcept { return !preposition.empty(); }

    /// Citation form, e.g. "be made of" or "contain".
    std::string display(std::string_view participle) const {
        std::string out;
        if (voice == Voice::passive) {
            out = "be ";
            out += participle;
        } else {
            out = verb.str();
        }
        if (has_preposition()) {
            out += ' ';
            out += preposition;
        }
        return out;
    }

    /// Lexicon-free key, e.g. "make/passive/of".
    std::string key() const {
        return verb.str() + "/" + std::string(to_string(voice)) + "/" +
               (has_preposition() ? preposition : "-");
    }

    friend auto operator<=>(const Pattern&, const Pattern&) = default;
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Ordered (modifier, head) lemma pair, e.g. orange juice.
struct NounCompound {
    Lemma modifier;
    Lemma head;

    std::string str() const { return modifier.str() + " " + head.str(); }

    friend auto operator<=>(const NounCompound&, const NounCompound&) = default;
    friend bool operator==(const NounCompound&, const NounCompound&) = default;
};

struct NCPatternPair {
    NounCompound nc;
    Pattern pattern;

    friend auto operator<=>(const NCPatternPair&, const NCPatternPair&) = default;
    friend bool operator==(const NCPatternPair&, const NCPatternPair&) = default;
};

} // namespace ncharvest

#endif
