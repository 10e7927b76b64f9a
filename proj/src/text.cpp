#include "halobench/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "halobench/hash.hpp"

namespace halobench {

namespace {

bool is_token_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;  // multibyte UTF-8 stays in-token
}

bool is_upper(unsigned char c) { return std::isupper(c) != 0; }

char to_lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

}  // namespace

TokenizedText tokenize(std::string_view text) {
    TokenizedText out;
    out.source.assign(text);

    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_token_char(c)) {
            ++i;
            continue;
        }
        std::string tok;
        bool cap = is_upper(c);
        while (i < n) {
            c = static_cast<unsigned char>(text[i]);
            if (is_token_char(c)) {
                tok.push_back(to_lower(c));
                ++i;
            } else if (c == '\'' && i + 1 < n && !tok.empty() &&
                       is_token_char(static_cast<unsigned char>(text[i + 1]))) {
                // apostrophe joins only between word characters: it's, don't
                tok.push_back('\'');
                ++i;
            } else {
                break;
            }
        }
        out.tokens.push_back(std::move(tok));
        out.capitalized.push_back(cap);

        // scan the gap up to the next token for terminator evidence
        char term = '\0';
        bool space_after = false;
        std::size_t j = i;
        while (j < n && !is_token_char(static_cast<unsigned char>(text[j]))) {
            char g = text[j];
            if (term == '\0' && (g == '.' || g == '?' || g == '!')) {
                term = g;
            } else if (term != '\0' && std::isspace(static_cast<unsigned char>(g))) {
                space_after = true;
            }
            ++j;
        }
        if (term != '\0' && j == n) space_after = true;  // end of text
        out.terminator_after.push_back(term);
        out.space_after_terminator.push_back(space_after);
        i = j;
    }
    return out;
}

void segment_sentences(TokenizedText& t, const Lexicon& abbreviations) {
    t.sentences.clear();
    const std::size_t n = t.tokens.size();
    if (n == 0) return;

    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        char term = t.terminator_after[i];
        if (term == '\0' || !t.space_after_terminator[i]) continue;
        if (!t.capitalized[i + 1]) continue;
        if (term == '.' && abbreviations.contains_word(t.tokens[i])) continue;
        t.sentences.push_back({start, i + 1});
        start = i + 1;
    }
    t.sentences.push_back({start, n});
}

Lexicon Lexicon::from_phrases(std::string name, const std::vector<std::string>& phrases,
                              MatchMode mode) {
    std::set<std::vector<std::string>> uniq;
    for (const auto& phrase : phrases) {
        TokenizedText tt = tokenize(phrase);
        if (tt.tokens.empty()) {
            throw LexiconError("lexicon '" + name + "': empty phrase entry");
        }
        if (tt.tokens.size() > 6) {
            throw LexiconError("lexicon '" + name + "': phrase longer than 6 tokens: \"" +
                               phrase + "\"");
        }
        uniq.insert(std::move(tt.tokens));
    }
    Lexicon lex;
    lex.name_ = std::move(name);
    lex.mode_ = mode;
    lex.entries_.assign(uniq.begin(), uniq.end());
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::string name, MatchMode mode) {
    std::ifstream in(path);
    if (!in) {
        throw LexiconError("cannot open lexicon file: " + path.string());
    }
    std::vector<std::string> phrases;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r\n");
        phrases.push_back(line.substr(b, e - b + 1));
    }
    return from_phrases(std::move(name), phrases, mode);
}

bool Lexicon::contains_word(const std::string& token) const {
    std::vector<std::string> key{token};
    return std::binary_search(entries_.begin(), entries_.end(), key);
}

std::string Lexicon::content_hash() const {
    std::ostringstream canon;
    for (const auto& entry : entries_) {
        for (std::size_t i = 0; i < entry.size(); ++i) {
            if (i) canon << ' ';
            canon << entry[i];
        }
        canon << '\n';
    }
    return fnv1a64_hex(canon.str());
}

namespace {

bool entry_matches_at(const TokenizedText& t, const std::vector<std::string>& entry,
                      std::size_t pos, std::size_t end, Lexicon::MatchMode mode) {
    if (pos + entry.size() > end) return false;
    for (std::size_t k = 0; k < entry.size(); ++k) {
        const std::string& tok = t.tokens[pos + k];
        const std::string& pat = entry[k];
        if (mode == Lexicon::MatchMode::kExactPhrase) {
            if (tok != pat) return false;
        } else {
            if (tok.size() < pat.size() || tok.compare(0, pat.size(), pat) != 0) return false;
        }
    }
    return true;
}

void match_range(const TokenizedText& t, const Lexicon& lex, Span range,
                 std::vector<LexiconMatch>& out) {
    std::size_t i = range.begin;
    while (i < range.end) {
        std::size_t best_len = 0;
        std::size_t best_entry = 0;
        for (std::size_t e = 0; e < lex.entries().size(); ++e) {
            const auto& entry = lex.entries()[e];
            if (entry.size() <= best_len) continue;
            if (entry_matches_at(t, entry, i, range.end, lex.match_mode())) {
                best_len = entry.size();
                best_entry = e;
            }
        }
        if (best_len > 0) {
            out.push_back({{i, i + best_len}, best_entry});
            i += best_len;
        } else {
            ++i;
        }
    }
}

}  // namespace

std::vector<LexiconMatch> match_lexicon(const TokenizedText& t, const Lexicon& lexicon,
                                        std::optional<Span> within) {
    std::vector<LexiconMatch> out;
    if (t.tokens.empty() || lexicon.empty()) return out;
    if (within) {
        match_range(t, lexicon, *within, out);
    } else if (!t.sentences.empty()) {
        for (const Span& s : t.sentences) match_range(t, lexicon, s, out);
    } else {
        match_range(t, lexicon, {0, t.tokens.size()}, out);
    }
    return out;
}

void chunk_noun_phrases(TokenizedText& t, const Lexicon& determiners,
                        const Lexicon& adjectives, const Lexicon& stopwords) {
    t.noun_phrases.clear();
    auto noun_like = [&](const std::string& tok) {
        return !stopwords.contains_word(tok) && !determiners.contains_word(tok) &&
               !adjectives.contains_word(tok);
    };
    for (const Span& s : t.sentences) {
        std::size_t i = s.begin;
        while (i < s.end) {
            std::size_t p = i;
            if (determiners.contains_word(t.tokens[p])) ++p;
            std::size_t adj_end = p;
            while (adj_end < s.end && adjectives.contains_word(t.tokens[adj_end])) ++adj_end;
            std::size_t noun_end = adj_end;
            while (noun_end < s.end && noun_like(t.tokens[noun_end])) ++noun_end;
            if (noun_end > adj_end) {
                t.noun_phrases.push_back({i, noun_end});
                i = noun_end;
            } else {
                ++i;
            }
        }
    }
}

}  // namespace halobench
