#include "halobench/halo_metrics.hpp"

#include <array>
#include <cctype>
#include <regex>
#include <unordered_set>

namespace halobench {

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"fcd",  "fgr", "fdf", "ecs",
                                                "ths",  "scd", "nrr", "ctc",
                                                "rcr",  "rouge_l", "bleu", "meteor"};
    return names;
}

const std::map<std::string, Polarity>& metric_polarity() {
    static const std::map<std::string, Polarity> pol{
        {"fcd", Polarity::kHigherBetter}, {"fgr", Polarity::kHigherBetter},
        {"fdf", Polarity::kLowerBetter},  {"ecs", Polarity::kLowerBetter},
        {"ths", Polarity::kLowerBetter},  {"scd", Polarity::kLowerBetter},
        {"nrr", Polarity::kHigherBetter}, {"ctc", Polarity::kHigherBetter},
        {"rcr", Polarity::kHigherBetter}, {"rouge_l", Polarity::kHigherBetter},
        {"bleu", Polarity::kHigherBetter}, {"meteor", Polarity::kHigherBetter}};
    return pol;
}

double ths_composite(double fcd, double fgr, double fdf, double ecs) {
    return fcd - (fgr + fdf + ecs);
}

nlohmann::json MetricVector::to_json() const {
    nlohmann::json j;
    j["fcd"] = fcd;
    j["fgr"] = fgr;
    j["fdf"] = fdf;
    j["ecs"] = ecs;
    j["ths"] = ths;
    j["scd"] = scd;
    j["nrr"] = nrr;
    j["ctc"] = ctc;
    j["rcr"] = rcr;
    j["rouge_l"] = rouge_l ? nlohmann::json(*rouge_l) : nlohmann::json(nullptr);
    j["bleu"] = bleu ? nlohmann::json(*bleu) : nlohmann::json(nullptr);
    j["meteor"] = meteor ? nlohmann::json(*meteor) : nlohmann::json(nullptr);
    return j;
}

MetricVector MetricVector::from_json(const nlohmann::json& j) {
    MetricVector v;
    v.fcd = j.at("fcd").get<double>();
    v.fgr = j.at("fgr").get<double>();
    v.fdf = j.at("fdf").get<double>();
    v.ecs = j.at("ecs").get<double>();
    v.ths = j.at("ths").get<double>();
    v.scd = j.at("scd").get<double>();
    v.nrr = j.at("nrr").get<double>();
    v.ctc = j.at("ctc").get<double>();
    v.rcr = j.at("rcr").get<double>();
    auto opt = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    v.rouge_l = opt("rouge_l");
    v.bleu = opt("bleu");
    v.meteor = opt("meteor");
    return v;
}

namespace {

// Capitalized "I" and contractions are orthography, not entity evidence.
bool is_pronoun_i(const std::string& tok) {
    static const std::unordered_set<std::string> kPronounI{"i", "i'm", "i've", "i'll", "i'd"};
    return kPronounI.count(tok) > 0;
}

bool has_digit(const std::string& tok) {
    for (unsigned char c : tok) {
        if (std::isdigit(c)) return true;
    }
    return false;
}

bool is_month(const std::string& tok) {
    static const std::unordered_set<std::string> kMonths{
        "january", "february", "march",     "april",   "june",     "july",
        "august",  "september", "october",  "november", "december"};
    return kMonths.count(tok) > 0;
}

bool sentence_has_number_or_date(const TokenizedText& t, const Span& s) {
    for (std::size_t i = s.begin; i < s.end; ++i) {
        if (has_digit(t.tokens[i]) || is_month(t.tokens[i])) return true;
    }
    return false;
}

double per_100_tokens(std::size_t matches, std::size_t word_count) {
    if (word_count == 0) return 0.0;
    return 100.0 * static_cast<double>(matches) / static_cast<double>(word_count);
}

// Structural grounding evidence beyond the cue lexicon: URLs, statute
// citations, and parenthetical source citations like "(Smith 2019)".
std::size_t structural_grounding_count(const TokenizedText& t) {
    std::size_t count = 0;
    static const std::regex kUrl(R"((https?://|www\.)\S+)");
    auto url_begin = std::sregex_iterator(t.source.begin(), t.source.end(), kUrl);
    count += static_cast<std::size_t>(std::distance(url_begin, std::sregex_iterator()));

    static const std::regex kParenSource(R"(\(([^)]*\b\d{4}\b[^)]*|see [^)]+)\))");
    auto paren_begin = std::sregex_iterator(t.source.begin(), t.source.end(), kParenSource);
    count += static_cast<std::size_t>(std::distance(paren_begin, std::sregex_iterator()));

    static const std::unordered_set<std::string> kStatuteHead{"section", "article", "title",
                                                              "chapter", "statute"};
    for (std::size_t i = 0; i + 1 < t.tokens.size(); ++i) {
        if (kStatuteHead.count(t.tokens[i]) > 0 && has_digit(t.tokens[i + 1])) ++count;
    }
    return count;
}

}  // namespace

bool HaloScorer::sentence_has_entity(const TokenizedText& t, const Span& sentence) const {
    for (std::size_t i = sentence.begin + 1; i < sentence.end; ++i) {
        if (t.capitalized[i] && !is_pronoun_i(t.tokens[i])) return true;
    }
    return !match_lexicon(t, res_.gazetteer, sentence).empty();
}

bool HaloScorer::is_claim_sentence(const TokenizedText& t, const Span& sentence) const {
    if (!match_lexicon(t, res_.hedges, sentence).empty()) return false;
    if (sentence_has_entity(t, sentence)) return true;
    if (sentence_has_number_or_date(t, sentence)) return true;
    // concrete real-world nouns count as entity evidence; the rule stays
    // swappable behind this method
    return !match_lexicon(t, res_.concrete_nouns, sentence).empty();
}

double HaloScorer::fcd(const TokenizedText& t) const {
    if (t.word_count() == 0) return 0.0;
    std::size_t claims = 0;
    for (const Span& s : t.sentences) {
        if (is_claim_sentence(t, s)) ++claims;
    }
    return per_100_tokens(claims, t.word_count());
}

double HaloScorer::fgr(const TokenizedText& t) const {
    return static_cast<double>(match_lexicon(t, res_.grounding).size() +
                               structural_grounding_count(t));
}

double HaloScorer::fdf(const TokenizedText& t) const {
    return per_100_tokens(match_lexicon(t, res_.disclaimers).size(), t.word_count());
}

double HaloScorer::ecs(const TokenizedText& t) const {
    return per_100_tokens(match_lexicon(t, res_.contextualization).size(), t.word_count());
}

double HaloScorer::scd(const TokenizedText& t) const {
    if (t.sentences.empty()) return 0.0;
    std::size_t hedged = 0;
    for (const Span& s : t.sentences) {
        if (!match_lexicon(t, res_.hedges, s).empty()) ++hedged;
    }
    return static_cast<double>(hedged) / static_cast<double>(t.sentences.size());
}

double HaloScorer::nrr(const TokenizedText& t) const {
    if (t.sentences.empty()) return 0.0;
    std::size_t named = 0;
    for (const Span& s : t.sentences) {
        if (sentence_has_entity(t, s)) ++named;
    }
    return static_cast<double>(named) / static_cast<double>(t.sentences.size());
}

double HaloScorer::ctc(const TokenizedText& t) const {
    return per_100_tokens(match_lexicon(t, res_.framing).size(), t.word_count());
}

double HaloScorer::rcr(const TokenizedText& t) const {
    if (t.noun_phrases.empty()) return 0.0;
    std::size_t concrete = 0;
    for (const Span& np : t.noun_phrases) {
        bool hit = false;
        for (std::size_t i = np.begin; i < np.end && !hit; ++i) {
            if (has_digit(t.tokens[i]) || is_month(t.tokens[i])) hit = true;
        }
        if (!hit) {
            // capitalized token that is not the first token of its sentence
            for (std::size_t i = np.begin; i < np.end && !hit; ++i) {
                bool sentence_initial = false;
                for (const Span& s : t.sentences) {
                    if (s.begin == i) sentence_initial = true;
                }
                if (!sentence_initial && t.capitalized[i] && !is_pronoun_i(t.tokens[i]))
                    hit = true;
            }
        }
        if (!hit) hit = !match_lexicon(t, res_.gazetteer, np).empty();
        if (!hit) hit = !match_lexicon(t, res_.concrete_nouns, np).empty();
        if (hit) ++concrete;
    }
    return static_cast<double>(concrete) / static_cast<double>(t.noun_phrases.size());
}

MetricVector HaloScorer::evaluate(std::string_view text,
                                  std::optional<std::string_view> reference) const {
    TokenizedText t = res_.analyze(text);
    MetricVector v;
    v.fcd = fcd(t);
    v.fgr = fgr(t);
    v.fdf = fdf(t);
    v.ecs = ecs(t);
    v.scd = scd(t);
    v.nrr = nrr(t);
    v.ctc = ctc(t);
    v.rcr = rcr(t);
    v.ths = ths_composite(v.fcd, v.fgr, v.fdf, v.ecs);
    if (reference) {
        TokenizedText ref = res_.analyze(*reference);
        RefScore rs = score_reference(t, ref);
        v.rouge_l = rs.rouge_l;
        v.bleu = rs.bleu;
        v.meteor = rs.meteor;
    }
    return v;
}

}  // namespace halobench
