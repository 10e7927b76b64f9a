#include "halobench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace halobench {

namespace {

// density metrics print with 2 decimals, everything else with 4
bool is_density(const std::string& name) {
    return name == "fcd" || name == "fgr" || name == "fdf" || name == "ecs";
}

std::string format_value(const std::string& name, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), is_density(name) ? "%.2f" : "%.4f", value);
    return buf;
}

std::string display_name(const std::string& name) {
    static const std::map<std::string, std::string> kDisplay{
        {"fcd", "FCD+"},     {"fgr", "FGR+"},     {"fdf", "FDF-"},
        {"ecs", "ECS-"},     {"ths", "THS-"},     {"scd", "SCD-"},
        {"nrr", "NRR+"},     {"ctc", "CTC+"},     {"rcr", "RCR+"},
        {"rouge_l", "ROUGE-L+"}, {"bleu", "BLEU+"}, {"meteor", "METEOR+"}};
    return kDisplay.at(name);
}

struct CellAccumulator {
    std::map<std::string, double> sums;
    std::map<std::string, std::size_t> counts;
    std::size_t responses = 0;

    void add(const MetricVector& v) {
        ++responses;
        const nlohmann::json j = v.to_json();
        for (const auto& name : metric_names()) {
            if (j.at(name).is_null()) continue;
            sums[name] += j.at(name).get<double>();
            counts[name] += 1;
        }
    }

    ReportCell finish() const {
        ReportCell cell;
        cell.count = responses;
        for (const auto& [name, sum] : sums) {
            cell.means[name] = sum / static_cast<double>(counts.at(name));
        }
        return cell;
    }
};

}  // namespace

AggregateReport aggregate(const std::vector<ScoredRun>& runs, const Dataset& dataset,
                          const Resources& resources) {
    HaloScorer scorer(resources);
    std::map<std::pair<std::string, std::string>, CellAccumulator> cells;

    // GT rows: self-comparison over every ground-truth answer
    for (const auto& gt : dataset.ground_truth) {
        const PromptRecord* prompt = dataset.find_prompt(gt.prompt_id);
        if (prompt == nullptr) {
            throw ReportError("ground truth references unknown prompt: " + gt.prompt_id);
        }
        cells[{prompt->domain, "GT"}].add(scorer.evaluate(gt.text, gt.text));
    }

    // LLM rows: scored responses grouped by prompt domain
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < run.run.responses.size(); ++i) {
            if (!run.metrics[i]) continue;
            const ModelResponse& r = run.run.responses[i];
            const PromptRecord* prompt = dataset.find_prompt(r.prompt_id);
            if (prompt == nullptr) {
                throw ReportError("scored run references unknown prompt: " + r.prompt_id);
            }
            cells[{prompt->domain, "LLM"}].add(*run.metrics[i]);
        }
    }

    AggregateReport report;
    report.toolkit_version = HALOBENCH_VERSION;
    report.lexicon_hashes = resources.lexicon_hashes();
    for (const auto& run : runs) {
        if (!run.source_hash.empty()) report.run_file_hashes.push_back(run.source_hash);
    }
    std::sort(report.run_file_hashes.begin(), report.run_file_hashes.end());

    // std::map ordering already gives domain alphabetical, GT before LLM
    for (const auto& [key, acc] : cells) {
        report.rows.push_back({key.first, key.second, acc.finish()});
    }
    return report;
}

nlohmann::json AggregateReport::to_json() const {
    nlohmann::json j;
    j["toolkit_version"] = toolkit_version;
    j["lexicon_hashes"] = lexicon_hashes;
    j["run_file_hashes"] = run_file_hashes;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json rj;
        rj["domain"] = row.domain;
        rj["source"] = row.source;
        rj["count"] = row.cell.count;
        nlohmann::json means;
        for (const auto& name : metric_names()) {
            auto it = row.cell.means.find(name);
            means[name] = (it == row.cell.means.end()) ? nlohmann::json(nullptr)
                                                       : nlohmann::json(it->second);
        }
        rj["means"] = std::move(means);
        j["rows"].push_back(std::move(rj));
    }
    return j;
}

AggregateReport AggregateReport::from_json(const nlohmann::json& j) {
    AggregateReport report;
    report.toolkit_version = j.value("toolkit_version", std::string{});
    if (j.contains("lexicon_hashes")) {
        for (const auto& [k, v] : j.at("lexicon_hashes").items()) {
            report.lexicon_hashes[k] = v.get<std::string>();
        }
    }
    if (j.contains("run_file_hashes")) {
        for (const auto& h : j.at("run_file_hashes")) {
            report.run_file_hashes.push_back(h.get<std::string>());
        }
    }
    for (const auto& rj : j.at("rows")) {
        ReportRow row;
        row.domain = rj.at("domain").get<std::string>();
        row.source = rj.at("source").get<std::string>();
        row.cell.count = rj.at("count").get<std::size_t>();
        for (const auto& [name, v] : rj.at("means").items()) {
            if (!v.is_null()) row.cell.means[name] = v.get<double>();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

RenderFormat render_format_from_string(const std::string& s) {
    if (s == "markdown") return RenderFormat::kMarkdown;
    if (s == "csv") return RenderFormat::kCsv;
    if (s == "json") return RenderFormat::kJson;
    throw ReportError("unknown report format: \"" + s + "\"");
}

namespace {

const std::vector<std::string>& band_one() {
    static const std::vector<std::string> b{"fcd", "fgr", "fdf", "ecs", "scd", "nrr"};
    return b;
}

const std::vector<std::string>& band_two() {
    static const std::vector<std::string> b{"ctc", "rcr", "rouge_l", "bleu", "meteor", "ths"};
    return b;
}

std::string cell_text(const ReportCell& cell, const std::string& name) {
    auto it = cell.means.find(name);
    if (it == cell.means.end()) return "absent";
    return format_value(name, it->second);
}

void render_band(std::ostringstream& out, const AggregateReport& report,
                 const std::vector<std::string>& band) {
    out << "| Domain | Source |";
    for (const auto& name : band) out << ' ' << display_name(name) << " |";
    out << "\n|---|---|";
    for (std::size_t i = 0; i < band.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& row : report.rows) {
        out << "| " << row.domain << " | " << row.source << " |";
        for (const auto& name : band) out << ' ' << cell_text(row.cell, name) << " |";
        out << '\n';
    }
}

std::string render_markdown(const AggregateReport& report) {
    std::ostringstream out;
    out << "# Split-View Hallucination Metrics\n\n";
    out << "GT rows are self-comparisons: every ground-truth answer is scored against "
           "itself, so reference-based similarity is 1 by construction.\n\n";
    render_band(out, report, band_one());
    out << '\n';
    render_band(out, report, band_two());
    out << "\n## Provenance\n\n";
    out << "- toolkit_version: " << report.toolkit_version << '\n';
    for (const auto& h : report.run_file_hashes) out << "- run_file_hash: " << h << '\n';
    for (const auto& [name, hash] : report.lexicon_hashes) {
        out << "- lexicon " << name << ": " << hash << '\n';
    }
    return out.str();
}

std::string render_csv(const AggregateReport& report) {
    std::ostringstream out;
    out << "domain,source,count";
    for (const auto& name : metric_names()) out << ',' << name;
    out << '\n';
    for (const auto& row : report.rows) {
        out << row.domain << ',' << row.source << ',' << row.cell.count;
        for (const auto& name : metric_names()) {
            out << ',';
            auto it = row.cell.means.find(name);
            if (it != row.cell.means.end()) out << format_value(name, it->second);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string render(const AggregateReport& report, RenderFormat format) {
    switch (format) {
        case RenderFormat::kMarkdown: return render_markdown(report);
        case RenderFormat::kCsv: return render_csv(report);
        case RenderFormat::kJson: return report.to_json().dump(2) + "\n";
    }
    throw ReportError("unknown report format");
}

std::string comparison_card(const PromptRecord& prompt, const GroundTruthAnswer& gt,
                            const ModelResponse& response,
                            const std::optional<MetricVector>& vector,
                            const HallucinationLabel* label, const std::string& impact) {
    std::ostringstream out;
    out << "# Expert vs. Language Model Response Comparison\n\n";
    out << "| Field | Content |\n|---|---|\n";
    out << "| Prompt | " << prompt.text << " |\n";
    out << "| Expert Answer | " << gt.text << " |\n";
    out << "| LLM Answer | " << response.text << " |\n";

    std::string hallucination = "unlabeled";
    if (label != nullptr) {
        if (!label->is_hallucination) {
            hallucination = "No";
        } else {
            hallucination = "Yes";
            for (std::size_t i = 0; i < label->categories.size(); ++i) {
                hallucination += (i == 0) ? " - " : " and ";
                hallucination += to_string(label->categories[i]);
            }
        }
    }
    out << "| Hallucination | " << hallucination << " |\n";

    std::string metrics_line;
    if (vector) {
        const nlohmann::json j = vector->to_json();
        bool first = true;
        for (const auto& name : metric_names()) {
            if (!first) metrics_line += ", ";
            first = false;
            metrics_line += display_name(name);
            metrics_line += "=";
            metrics_line += j.at(name).is_null() ? "absent"
                                                 : format_value(name, j.at(name).get<double>());
        }
    } else {
        metrics_line = "unscored";
    }
    out << "| Hallucination Metrics | " << metrics_line << " |\n";
    out << "| Impact | " << impact << " |\n";
    return out.str();
}

}  // namespace halobench
