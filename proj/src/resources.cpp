#include "halobench/resources.hpp"

#include <fstream>
#include <sstream>

namespace halobench {

std::string fnv1a64_hex(std::string_view data) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string file_hash_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64_hex(buf.str());
}

Resources Resources::load(const std::filesystem::path& dir) {
    using M = Lexicon::MatchMode;
    Resources r;
    r.abbreviations = Lexicon::load(dir / "abbreviations.txt", "abbreviations", M::kExactPhrase);
    r.stopwords = Lexicon::load(dir / "stopwords.txt", "stopwords", M::kExactPhrase);
    r.adjectives = Lexicon::load(dir / "adjectives.txt", "adjectives", M::kExactPhrase);
    r.determiners = Lexicon::load(dir / "determiners.txt", "determiners", M::kExactPhrase);
    r.hedges = Lexicon::load(dir / "hedges.txt", "hedges", M::kExactPhrase);
    r.grounding = Lexicon::load(dir / "grounding.txt", "grounding", M::kExactPhrase);
    r.disclaimers = Lexicon::load(dir / "disclaimers.txt", "disclaimers", M::kExactPhrase);
    r.contextualization =
        Lexicon::load(dir / "contextualization.txt", "contextualization", M::kExactPhrase);
    r.framing = Lexicon::load(dir / "framing.txt", "framing", M::kExactPhrase);
    r.gazetteer = Lexicon::load(dir / "gazetteer.txt", "gazetteer", M::kExactPhrase);
    r.concrete_nouns =
        Lexicon::load(dir / "concrete_nouns.txt", "concrete_nouns", M::kExactPhrase);
    return r;
}

Resources Resources::load_default() { return load(HALOBENCH_DATA_DIR); }

std::map<std::string, std::string> Resources::lexicon_hashes() const {
    std::map<std::string, std::string> out;
    for (const Lexicon* lex :
         {&abbreviations, &stopwords, &adjectives, &determiners, &hedges, &grounding,
          &disclaimers, &contextualization, &framing, &gazetteer, &concrete_nouns}) {
        out[lex->name()] = lex->content_hash();
    }
    return out;
}

TokenizedText Resources::analyze(std::string_view text) const {
    TokenizedText t = tokenize(text);
    segment_sentences(t, abbreviations);
    chunk_noun_phrases(t, determiners, adjectives, stopwords);
    return t;
}

}  // namespace halobench
