#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "halobench/hash.hpp"
#include "halobench/text.hpp"

namespace halobench {

// The shipped word lists and cue lexicons. All of them are versioned
// plain-text data files; their content hashes travel with every run file
// and report so scores can be audited.
struct Resources {
    Lexicon abbreviations;      // sentence-split exceptions (dr, mr, etc)
    Lexicon stopwords;          // function words, never noun-like
    Lexicon adjectives;         // closed adjective lexicon for NP chunking
    Lexicon determiners;
    Lexicon hedges;             // speculative cues: might, possibly, ...
    Lexicon grounding;          // citation cues: according to, studies show, ...
    Lexicon disclaimers;        // explicit fiction disclaimers
    Lexicon contextualization;  // purely fictional, mythical, ...
    Lexicon framing;            // according to legend, reportedly, ...
    Lexicon gazetteer;          // agencies, organizations, document types
    Lexicon concrete_nouns;     // concrete real-world entity nouns

    static Resources load(const std::filesystem::path& dir);
    static Resources load_default();

    std::map<std::string, std::string> lexicon_hashes() const;

    // tokenize + sentence segmentation + NP chunking in one pass
    TokenizedText analyze(std::string_view text) const;
};

}  // namespace halobench
