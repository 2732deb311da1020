#ifndef NCHARVEST_CORPUS_INDEX_HPP
#define NCHARVEST_CORPUS_INDEX_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ncharvest/text.hpp"
#include "ncharvest/types.hpp"

namespace ncharvest {

inline constexpr std::size_t kMaxQuerySlots = 16;
inline constexpr std::size_t kDefaultSnippetCap = 1000;
inline constexpr std::size_t kDefaultSnippetRadius = 10;

struct QuerySlot {
    bool wildcard = false;
    std::string token;  // empty for wildcards

    static QuerySlot literal(std::string t) { return {false, std::move(t)}; }
    static QuerySlot any() { return {true, {}}; }

    friend bool operator==(const QuerySlot&, const QuerySlot&) = default;
    friend auto operator<=>(const QuerySlot&, const QuerySlot&) = default;
};

/// Exact-phrase query of literal tokens and single-token wildcards.
/// Each `*` matches exactly one token.
class PhraseQuery {
public:
    PhraseQuery() = default;

    explicit PhraseQuery(std::vector<QuerySlot> slots) : slots_(std::move(slots)) {
        if (slots_.empty()) throw Error("phrase query is empty");
        if (slots_.size() > kMaxQuerySlots)
            throw Error("phrase query exceeds " + std::to_string(kMaxQuerySlots) + " slots");
        if (literal_count() == 0) throw Error("phrase query has no literal token");
        for (const auto& s : slots_)
            if (!s.wildcard && (s.token.empty() || s.token.find(' ') != std::string::npos))
                throw Error("phrase query literal must be a single non-empty token");
    }

    /// Parses space-separated tokens; `*` denotes a wildcard.
    static PhraseQuery parse(std::string_view text) {
        std::vector<QuerySlot> slots;
        for (auto& w : text::split_words(text))
            slots.push_back(w == "*" ? QuerySlot::any() : QuerySlot::literal(text::to_lower(w)));
        return PhraseQuery(std::move(slots));
    }

    const std::vector<QuerySlot>& slots() const { return slots_; }
    std::size_t size() const { return slots_.size(); }

    std::size_t literal_count() const {
        return static_cast<std::size_t>(
            std::count_if(slots_.begin(), slots_.end(), [](const QuerySlot& s) { return !s.wildcard; }));
    }
    std::size_t wildcard_count() const { return size() - literal_count(); }

    std::string str() const {
        std::string out;
        for (const auto& s : slots_) {
            if (!out.empty()) out += ' ';
            out += s.wildcard ? std::string("*") : s.token;
        }
        return out;
    }

    friend bool operator==(const PhraseQuery&, const PhraseQuery&) = default;
    friend auto operator<=>(const PhraseQuery&, const PhraseQuery&) = default;

private:
    std::vector<QuerySlot> slots_;
};

/// A matched token window. Offsets are absolute token positions in the
/// document; `tokens` starts at `window_start`.
struct Snippet {
    std::uint32_t doc_id = 0;
    std::size_t match_start = 0;
    std::size_t match_end = 0;  // exclusive
    std::size_t window_start = 0;
    std::vector<std::string> tokens;

    /// Window-relative index of an absolute position.
    std::size_t local(std::size_t absolute) const { return absolute - window_start; }
    std::size_t local_match_start() const { return match_start - window_start; }
    std::size_t local_match_end() const { return match_end - window_start; }

    friend bool operator==(const Snippet&, const Snippet&) = default;
};

/// Source of snippets for harvesting queries. The corpus index is the one
/// shipped implementation; a remote engine client would implement the same
/// interface.
class SnippetProvider {
public:
    virtual ~SnippetProvider() = default;
    virtual std::vector<Snippet> search(const PhraseQuery& query, std::size_t cap) const = 0;
};

struct Document {
    std::string name;
    std::vector<std::string> tokens;
};

/// Positional inverted index over a tokenised, lowercased corpus.
class CorpusIndex : public SnippetProvider {
public:
    static constexpr char kMagic[4] = {'N', 'C', 'I', 'X'};
    static constexpr std::uint8_t kFormatVersion = 1;

    struct Posting {
        std::uint32_t doc;
        std::uint32_t pos;
        friend bool operator==(const Posting&, const Posting&) = default;
    };

    CorpusIndex() = default;

    static CorpusIndex build(const std::vector<Document>& docs) {
        if (docs.empty()) throw Error("cannot build an index from an empty collection");
        if (docs.size() > std::numeric_limits<std::uint32_t>::max())
            throw Error("too many documents");
        CorpusIndex idx;
        for (const auto& d : docs) {
            std::vector<std::uint32_t> ids;
            ids.reserve(d.tokens.size());
            for (const auto& t : d.tokens) ids.push_back(idx.intern(t));
            idx.names_.push_back(d.name);
            idx.docs_.push_back(std::move(ids));
        }
        idx.build_postings();
        return idx;
    }

    static CorpusIndex build(const std::vector<std::vector<std::string>>& token_docs) {
        std::vector<Document> docs;
        docs.reserve(token_docs.size());
        for (std::size_t i = 0; i < token_docs.size(); ++i)
            docs.push_back({"doc" + std::to_string(i), token_docs[i]});
        return build(docs);
    }

    std::size_t document_count() const { return docs_.size(); }
    std::size_t vocabulary_size() const { return vocab_.size(); }

    std::size_t token_count() const {
        std::size_t n = 0;
        for (const auto& d : docs_) n += d.size();
        return n;
    }

    std::size_t posting_count() const {
        std::size_t n = 0;
        for (const auto& p : postings_) n += p.size();
        return n;
    }

    const std::string& document_name(std::size_t doc) const { return names_.at(doc); }
    std::size_t document_length(std::size_t doc) const { return docs_.at(doc).size(); }

    std::vector<std::string> document_tokens(std::size_t doc) const {
        std::vector<std::string> out;
        for (const auto id : docs_.at(doc)) out.push_back(vocab_[id]);
        return out;
    }

    void set_snippet_radius(std::size_t r) { radius_ = r; }
    std::size_t snippet_radius() const { return radius_; }

    /// Matches in corpus order (doc, position), at most `cap` of them.
    std::vector<Snippet> search(const PhraseQuery& query, std::size_t cap) const override {
        if (cap == 0) throw Error("search cap must be at least 1");
        if (query.literal_count() == 0) throw Error("malformed query: no literal token");
        const auto& slots = query.slots();

        std::vector<std::pair<std::size_t, std::uint32_t>> literals;  // (slot, term id)
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].wildcard) continue;
            const auto it = term_ids_.find(slots[i].token);
            if (it == term_ids_.end()) return {};
            literals.emplace_back(i, it->second);
        }
        const auto rarest = *std::min_element(literals.begin(), literals.end(), [&](auto& a, auto& b) {
            return postings_[a.second].size() < postings_[b.second].size();
        });

        std::vector<Snippet> out;
        for (const auto& p : postings_[rarest.second]) {
            if (p.pos < rarest.first) continue;
            const std::size_t start = p.pos - rarest.first;
            const auto& doc = docs_[p.doc];
            if (start + slots.size() > doc.size()) continue;
            const bool ok = std::all_of(literals.begin(), literals.end(), [&](const auto& lit) {
                return doc[start + lit.first] == lit.second;
            });
            if (!ok) continue;
            out.push_back(make_snippet(p.doc, start, start + slots.size()));
            if (out.size() == cap) break;
        }
        return out;
    }

    Snippet make_snippet(std::uint32_t doc_id, std::size_t start, std::size_t end) const {
        const auto& doc = docs_.at(doc_id);
        Snippet s;
        s.doc_id = doc_id;
        s.match_start = start;
        s.match_end = end;
        s.window_start = start > radius_ ? start - radius_ : 0;
        const std::size_t window_end = std::min(doc.size(), end + radius_);
        for (std::size_t i = s.window_start; i < window_end; ++i) s.tokens.push_back(vocab_[doc[i]]);
        return s;
    }

    /// Binary image: magic, version byte, vocabulary, documents, postings.
    std::string serialize() const {
        std::string out(kMagic, sizeof kMagic);
        out.push_back(static_cast<char>(kFormatVersion));
        put_u32(out, vocab_.size());
        for (const auto& t : vocab_) put_str(out, t);
        put_u32(out, docs_.size());
        for (std::size_t d = 0; d < docs_.size(); ++d) {
            put_str(out, names_[d]);
            put_u32(out, docs_[d].size());
            for (const auto id : docs_[d]) put_u32(out, id);
        }
        for (const auto& plist : postings_) {
            put_u32(out, plist.size());
            for (const auto& p : plist) {
                put_u32(out, p.doc);
                put_u32(out, p.pos);
            }
        }
        return out;
    }

    static CorpusIndex deserialize(std::string_view bytes) {
        Reader r{bytes};
        if (bytes.size() < 5 || std::memcmp(bytes.data(), kMagic, 4) != 0)
            throw Error("not a corpus index file (bad magic)");
        r.pos = 4;
        const auto version = static_cast<std::uint8_t>(bytes[r.pos++]);
        if (version != kFormatVersion)
            throw Error("unsupported corpus index version " + std::to_string(version));
        CorpusIndex idx;
        const auto nvocab = r.u32();
        for (std::uint32_t i = 0; i < nvocab; ++i) {
            idx.vocab_.push_back(r.str());
            idx.term_ids_.emplace(idx.vocab_.back(), i);
        }
        const auto ndocs = r.u32();
        for (std::uint32_t d = 0; d < ndocs; ++d) {
            idx.names_.push_back(r.str());
            const auto n = r.u32();
            std::vector<std::uint32_t> ids(n);
            for (auto& id : ids) {
                id = r.u32();
                if (id >= nvocab) throw Error("corrupt corpus index: term id out of range");
            }
            idx.docs_.push_back(std::move(ids));
        }
        std::vector<std::vector<Posting>> stored(nvocab);
        for (auto& plist : stored) {
            const auto n = r.u32();
            plist.reserve(n);
            for (std::uint32_t i = 0; i < n; ++i) {
                const auto doc = r.u32();
                const auto pos = r.u32();
                plist.push_back({doc, pos});
            }
        }
        if (r.pos != bytes.size()) throw Error("corrupt corpus index: trailing bytes");
        if (idx.docs_.empty()) throw Error("corrupt corpus index: no documents");
        idx.build_postings();
        if (stored != idx.postings_) throw Error("corrupt corpus index: postings do not match documents");
        return idx;
    }

    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path + "'");
        const auto bytes = serialize();
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error("write failed for '" + path + "'");
    }

    static CorpusIndex load(const std::string& path) { return deserialize(text::read_file(path)); }

private:
    struct Reader {
        std::string_view bytes;
        std::size_t pos = 0;

        std::uint32_t u32() {
            if (pos + 4 > bytes.size()) throw Error("corrupt corpus index: truncated");
            std::uint32_t v = 0;
            for (int i = 0; i < 4; ++i)
                v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
            pos += 4;
            return v;
        }
        std::string str() {
            const auto n = u32();
            if (pos + n > bytes.size()) throw Error("corrupt corpus index: truncated string");
            std::string s(bytes.substr(pos, n));
            pos += n;
            return s;
        }
    };

    static void put_u32(std::string& out, std::size_t v) {
        if (v > std::numeric_limits<std::uint32_t>::max()) throw Error("corpus index field overflow");
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    static void put_str(std::string& out, const std::string& s) {
        put_u32(out, s.size());
        out += s;
    }

    std::uint32_t intern(const std::string& tok) {
        const auto [it, inserted] = term_ids_.emplace(tok, static_cast<std::uint32_t>(vocab_.size()));
        if (inserted) vocab_.push_back(tok);
        return it->second;
    }

    void build_postings() {
        postings_.assign(vocab_.size(), {});
        for (std::uint32_t d = 0; d < docs_.size(); ++d)
            for (std::uint32_t i = 0; i < docs_[d].size(); ++i) postings_[docs_[d][i]].push_back({d, i});
    }

    std::vector<std::string> vocab_;
    std::unordered_map<std::string, std::uint32_t> term_ids_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::uint32_t>> docs_;
    std::vector<std::vector<Posting>> postings_;
    std::size_t radius_ = kDefaultSnippetRadius;
};

enum class CorpusLayout { lines, files };

/// Reads a plain-text corpus: one document per line, or one per regular
/// file under a directory (sorted by path).
inline std::vector<Document> read_corpus(const std::string& path, CorpusLayout layout) {
    namespace fs = std::filesystem;
    std::vector<Document> docs;
    if (!fs::exists(path)) throw Error("corpus path does not exist: '" + path + "'");
    if (layout == CorpusLayout::lines) {
        if (!fs::is_regular_file(path)) throw Error("line-layout corpus must be a file: '" + path + "'");
        std::size_t n = 0;
        for (const auto& line : text::read_lines(path)) {
            ++n;
            auto toks = text::tokenize(line);
            if (toks.empty()) continue;
            docs.push_back({"line" + std::to_string(n), std::move(toks)});
        }
    } else {
        if (!fs::is_directory(path)) throw Error("file-layout corpus must be a directory: '" + path + "'");
        std::vector<fs::path> files;
        for (const auto& e : fs::recursive_directory_iterator(path))
            if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            auto toks = text::tokenize(text::read_file(f.string()));
            if (toks.empty()) continue;
            docs.push_back({fs::relative(f, path).generic_string(), std::move(toks)});
        }
    }
    return docs;
}

} // namespace ncharvest

#endif
