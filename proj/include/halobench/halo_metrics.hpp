#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "halobench/ref_metrics.hpp"
#include "halobench/resources.hpp"
#include "halobench/text.hpp"

namespace halobench {

enum class Polarity { kHigherBetter, kLowerBetter };

// The twelve named scores for one text. Reference-based fields are absent
// (not zero) when no reference was supplied.
struct MetricVector {
    double fcd = 0.0;  // fact-like claims per 100 words
    double fgr = 0.0;  // grounding-reference count
    double fdf = 0.0;  // fictional disclaimers per 100 tokens
    double ecs = 0.0;  // contextualization cues per 100 tokens
    double ths = 0.0;  // fcd - (fgr + fdf + ecs)
    double scd = 0.0;  // proportion of hedged sentences
    double nrr = 0.0;  // proportion of sentences with a named reference
    double ctc = 0.0;  // framing cues per 100 tokens
    double rcr = 0.0;  // proportion of concrete noun phrases
    std::optional<double> rouge_l;
    std::optional<double> bleu;
    std::optional<double> meteor;

    nlohmann::json to_json() const;
    static MetricVector from_json(const nlohmann::json& j);
    bool operator==(const MetricVector&) const = default;
};

// Fixed serialization / report order of the twelve metrics.
const std::vector<std::string>& metric_names();
const std::map<std::string, Polarity>& metric_polarity();

double ths_composite(double fcd, double fgr, double fdf, double ecs);

// Reference-free scoring over the shipped lexicons. Pure and stateless:
// identical bytes in, identical MetricVector out, on any thread.
class HaloScorer {
public:
    explicit HaloScorer(const Resources& resources) : res_(resources) {}

    double fcd(const TokenizedText& t) const;
    double fgr(const TokenizedText& t) const;
    double fdf(const TokenizedText& t) const;
    double ecs(const TokenizedText& t) const;
    double scd(const TokenizedText& t) const;
    double nrr(const TokenizedText& t) const;
    double ctc(const TokenizedText& t) const;
    double rcr(const TokenizedText& t) const;

    MetricVector evaluate(std::string_view text,
                          std::optional<std::string_view> reference = std::nullopt) const;

    // A sentence is a fact-like claim when it carries entity, number, or
    // date evidence and no hedge.
    bool is_claim_sentence(const TokenizedText& t, const Span& sentence) const;

private:
    bool sentence_has_entity(const TokenizedText& t, const Span& sentence) const;
    const Resources& res_;
};

}  // namespace halobench
