#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace halobench {

// Half-open token-index range [begin, end).
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t idx) const { return idx >= begin && idx < end; }
    bool operator==(const Span&) const = default;
};

// Lexical analysis result shared by every metric. Tokens are lowercased;
// the original capitalization and the punctuation following each token are
// kept as evidence for sentence segmentation and entity heuristics.
struct TokenizedText {
    std::string source;
    std::vector<std::string> tokens;
    std::vector<bool> capitalized;        // token began with an uppercase letter
    std::vector<char> terminator_after;   // '.', '?', '!' or '\0'
    std::vector<bool> space_after_terminator;
    std::vector<Span> sentences;
    std::vector<Span> noun_phrases;

    std::size_t word_count() const { return tokens.size(); }
    bool operator==(const TokenizedText&) const = default;
};

class LexiconError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A named set of lowercased phrase patterns, 1-6 tokens each.
// File format: UTF-8, one phrase per line, '#' starts a comment,
// blank lines ignored.
class Lexicon {
public:
    enum class MatchMode { kExactPhrase, kPrefix };

    Lexicon() = default;

    static Lexicon load(const std::filesystem::path& path, std::string name,
                        MatchMode mode = MatchMode::kExactPhrase);
    static Lexicon from_phrases(std::string name,
                                const std::vector<std::string>& phrases,
                                MatchMode mode = MatchMode::kExactPhrase);

    const std::string& name() const { return name_; }
    MatchMode match_mode() const { return mode_; }
    const std::vector<std::vector<std::string>>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    // True when the single token is itself an entry (used by the
    // abbreviation / stopword / determiner / adjective word lists).
    bool contains_word(const std::string& token) const;

    // Hash of the canonical (sorted, deduplicated) entry list.
    std::string content_hash() const;

    bool operator==(const Lexicon&) const = default;

private:
    std::string name_;
    MatchMode mode_ = MatchMode::kExactPhrase;
    std::vector<std::vector<std::string>> entries_;  // sorted, deduplicated
};

struct LexiconMatch {
    Span span;
    std::size_t entry_index = 0;  // into Lexicon::entries()

    bool operator==(const LexiconMatch&) const = default;
};

// Tokens are maximal runs of letters/digits/apostrophes, lowercased.
// Punctuation is dropped as tokens but kept as sentence-boundary evidence.
TokenizedText tokenize(std::string_view text);

// Populates sentence spans: a boundary follows '.', '?' or '!' plus
// whitespace plus a capitalized token, except after a listed abbreviation.
// Trailing unterminated text forms a final sentence.
void segment_sentences(TokenizedText& t, const Lexicon& abbreviations);

// Non-overlapping leftmost-longest phrase matches, ordered by start index.
// When sentence spans are populated, matches never cross a sentence
// boundary; `within` restricts the scan to one token range.
std::vector<LexiconMatch> match_lexicon(const TokenizedText& t, const Lexicon& lexicon,
                                        std::optional<Span> within = std::nullopt);

// Shallow noun-phrase grammar: optional determiner, optional adjectives
// from a closed lexicon, one or more noun-like tokens (anything not in the
// function-word stoplist). Each span lies inside a single sentence.
void chunk_noun_phrases(TokenizedText& t, const Lexicon& determiners,
                        const Lexicon& adjectives, const Lexicon& stopwords);

}  // namespace halobench
