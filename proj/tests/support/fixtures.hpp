#ifndef NCHARVEST_TESTS_FIXTURES_HPP
#define NCHARVEST_TESTS_FIXTURES_HPP

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include "ncharvest.hpp"

namespace fixtures {

inline std::string data_path(const std::string& rel) { return std::string(NCHARVEST_DATA_DIR) + "/" + rel; }

inline const ncharvest::Lexicon& lexicon() {
    static const auto lex = ncharvest::Lexicon::load(data_path("lexicon.tsv"));
    return lex;
}

inline const ncharvest::WordLists& wordlists() {
    static const auto wl = ncharvest::WordLists::load(data_path("wordlists.tsv"));
    return wl;
}

inline ncharvest::SeedSet shipped_seeds() {
    return ncharvest::load_seeds(data_path("seeds/seed_ncs.tsv"), data_path("seeds/seed_patterns.tsv"),
                                 data_path("seeds/seed_pairs.tsv"));
}

inline ncharvest::Pattern pat(const std::string& verb, ncharvest::Voice v, const std::string& prep = {}) {
    return ncharvest::Pattern(ncharvest::Lemma(verb), v, prep);
}

inline ncharvest::NounCompound nc(const std::string& mod, const std::string& head) {
    return ncharvest::NounCompound{ncharvest::Lemma(mod), ncharvest::Lemma(head)};
}

inline std::vector<std::string> toks(const std::string& s) { return ncharvest::text::tokenize(s); }

/// Snippet covering a whole tokenized sentence, match = [start, end).
inline ncharvest::Snippet snippet_of(const std::string& sentence, std::size_t start = 0, std::size_t end = 0) {
    ncharvest::Snippet s;
    s.tokens = toks(sentence);
    s.match_start = start;
    s.match_end = end == 0 ? s.tokens.size() : end;
    return s;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("ncharvest_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

} // namespace fixtures

#endif
