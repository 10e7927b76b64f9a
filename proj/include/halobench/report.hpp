#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "halobench/dataset.hpp"
#include "halobench/harness.hpp"

namespace halobench {

class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One (domain, source) cell: unweighted arithmetic means per metric.
// Metrics with no contributing values are absent, never 0.0.
struct ReportCell {
    std::map<std::string, double> means;
    std::size_t count = 0;
};

struct ReportRow {
    std::string domain;
    std::string source;  // "GT" or "LLM"
    ReportCell cell;
};

struct AggregateReport {
    // ordered: domain alphabetical, GT before LLM
    std::vector<ReportRow> rows;
    std::vector<std::string> run_file_hashes;
    std::map<std::string, std::string> lexicon_hashes;
    std::string toolkit_version;

    nlohmann::json to_json() const;
    static AggregateReport from_json(const nlohmann::json& j);
};

// GT rows are populated by self-comparison, evaluate(gt, gt); LLM rows by
// the scored responses, grouped by the prompt's domain.
AggregateReport aggregate(const std::vector<ScoredRun>& runs, const Dataset& dataset,
                          const Resources& resources);

enum class RenderFormat { kMarkdown, kCsv, kJson };

RenderFormat render_format_from_string(const std::string& s);  // throws ReportError

// Byte-stable rendering. Markdown uses the two-band split-view layout with
// polarity superscripts; densities print with 2 decimals, proportions and
// similarity scores with 4.
std::string render(const AggregateReport& report, RenderFormat format);

// Per-response comparison card: Prompt / Expert Answer / LLM Answer /
// Hallucination / Hallucination Metrics / Impact.
std::string comparison_card(const PromptRecord& prompt, const GroundTruthAnswer& gt,
                            const ModelResponse& response,
                            const std::optional<MetricVector>& vector,
                            const HallucinationLabel* label,
                            const std::string& impact = {});

}  // namespace halobench
