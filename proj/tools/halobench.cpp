// halobench: validate golden datasets, query model cohorts, score responses,
// and render split-view hallucination reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halobench/dataset.hpp"
#include "halobench/harness.hpp"
#include "halobench/report.hpp"

namespace fs = std::filesystem;
using namespace halobench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsageError = 2;

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_validate(const std::string& dataset_path) {
    Dataset dataset = load_dataset(dataset_path);
    auto violations = validate_labels(dataset);
    for (const auto& v : violations) std::cerr << v.message << '\n';
    if (!violations.empty()) return kExitValidationFailure;
    std::cerr << "dataset valid: " << dataset.prompts.size() << " prompts, "
              << dataset.ground_truth.size() << " ground-truth answers, "
              << dataset.labels.size() << " labels\n";
    return kExitOk;
}

int cmd_run(const std::string& dataset_path, const std::string& config_path,
            const std::string& out_path, int max_concurrency,
            const std::vector<std::string>& endpoint_filter, const std::string& lexicon_dir) {
    Dataset dataset = load_dataset(dataset_path);
    RunConfig config = RunConfig::load(config_path);
    if (max_concurrency > 0) config.concurrency = max_concurrency;
    Resources resources =
        lexicon_dir.empty() ? Resources::load_default() : Resources::load(lexicon_dir);
    fs::path written = run_benchmark(dataset, config, resources, out_path, endpoint_filter);
    std::cerr << "run written: " << written.string() << '\n';
    return kExitOk;
}

int cmd_score(const std::string& dataset_path, const std::string& run_path,
              const std::string& out_path, const std::string& lexicon_dir) {
    Dataset dataset = load_dataset(dataset_path);
    Resources resources =
        lexicon_dir.empty() ? Resources::load_default() : Resources::load(lexicon_dir);
    replay_scoring(run_path, dataset, resources, out_path);
    std::cerr << "scored run written: " << out_path << '\n';
    return kExitOk;
}

int cmd_report(const std::string& dataset_path, const std::vector<std::string>& run_paths,
               const std::string& out_dir, const std::string& format,
               const std::string& lexicon_dir) {
    Dataset dataset = load_dataset(dataset_path);
    Resources resources =
        lexicon_dir.empty() ? Resources::load_default() : Resources::load(lexicon_dir);
    std::vector<ScoredRun> runs;
    for (const auto& p : run_paths) runs.push_back(ScoredRun::load(p));
    AggregateReport report = aggregate(runs, dataset, resources);

    const RenderFormat rf = render_format_from_string(format);
    fs::create_directories(out_dir);
    const char* filename = (rf == RenderFormat::kMarkdown) ? "report.md"
                           : (rf == RenderFormat::kCsv)    ? "report.csv"
                                                           : "report.json";
    const fs::path out = fs::path(out_dir) / filename;
    write_text_file(out, render(report, rf));
    std::cerr << "report written: " << out.string() << '\n';
    return kExitOk;
}

int cmd_card(const std::string& dataset_path, const std::string& run_path,
             const std::string& out_dir) {
    Dataset dataset = load_dataset(dataset_path);
    ScoredRun run = ScoredRun::load(run_path);
    const fs::path cards_dir = fs::path(out_dir) / "cards";
    fs::create_directories(cards_dir);
    std::size_t written = 0;
    for (std::size_t i = 0; i < run.run.responses.size(); ++i) {
        const ModelResponse& r = run.run.responses[i];
        const PromptRecord* prompt = dataset.find_prompt(r.prompt_id);
        if (prompt == nullptr) {
            throw DatasetError("dangling prompt_id in run file: \"" + r.prompt_id + "\"");
        }
        const GroundTruthAnswer* gt = dataset.find_ground_truth(r.prompt_id);
        if (gt == nullptr) {
            throw DatasetError("no ground truth for prompt \"" + r.prompt_id + "\"");
        }
        const HallucinationLabel* label = nullptr;
        for (const auto& l : dataset.labels) {
            if (l.response_ref == r.ref()) label = &l;
        }
        std::string name = r.prompt_id + "_" + r.endpoint_name + ".md";
        write_text_file(cards_dir / name,
                        comparison_card(*prompt, *gt, r, run.metrics[i], label));
        ++written;
    }
    std::cerr << written << " cards written under " << cards_dir.string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"halobench: domain-contextualized hallucination benchmark toolkit"};
    app.require_subcommand(1);

    std::string dataset_path, config_path, run_path, out_path, lexicon_dir;
    std::string format = "markdown";
    int max_concurrency = 0;
    std::vector<std::string> run_paths;
    std::vector<std::string> endpoint_filter;

    auto* validate = app.add_subcommand("validate", "validate a golden dataset");
    validate->add_option("--dataset", dataset_path, "dataset JSON")->required();

    auto* run = app.add_subcommand("run", "query the configured endpoint cohort");
    run->add_option("--dataset", dataset_path)->required();
    run->add_option("--config", config_path, "run config JSON")->required();
    run->add_option("--out", out_path, "run file to write (must not exist)")->required();
    run->add_option("--max-concurrency", max_concurrency, "request fan-out bound");
    run->add_option("--endpoints", endpoint_filter, "only these endpoint names");
    run->add_option("--lexicons", lexicon_dir, "lexicon data directory");

    auto* score = app.add_subcommand("score", "score a captured run offline");
    score->add_option("--dataset", dataset_path)->required();
    score->add_option("--run", run_path, "run file to score")->required();
    score->add_option("--out", out_path, "scored run file to write")->required();
    score->add_option("--lexicons", lexicon_dir);

    auto* report = app.add_subcommand("report", "aggregate scored runs into a split view");
    report->add_option("--dataset", dataset_path)->required();
    report->add_option("--run", run_paths, "scored run file(s)")->required();
    report->add_option("--out", out_path, "output directory")->required();
    report->add_option("--format", format, "markdown|csv|json");
    report->add_option("--lexicons", lexicon_dir);

    auto* card = app.add_subcommand("card", "emit per-response comparison cards");
    card->add_option("--dataset", dataset_path)->required();
    card->add_option("--run", run_path, "scored run file")->required();
    card->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::stringstream msg;
        int code = app.exit(e, msg, msg);
        std::cerr << msg.str();
        return (code == 0) ? kExitOk : kExitUsageError;
    }

    try {
        if (validate->parsed()) return cmd_validate(dataset_path);
        if (run->parsed())
            return cmd_run(dataset_path, config_path, out_path, max_concurrency,
                           endpoint_filter, lexicon_dir);
        if (score->parsed()) return cmd_score(dataset_path, run_path, out_path, lexicon_dir);
        if (report->parsed())
            return cmd_report(dataset_path, run_paths, out_path, format, lexicon_dir);
        if (card->parsed()) return cmd_card(dataset_path, run_path, out_path);
    } catch (const ReportError& e) {
        std::cerr << "error: " << e.what() << '\n';
        // unknown --format is a usage error, everything else a data failure
        if (std::string(e.what()).rfind("unknown report format", 0) == 0)
            return kExitUsageError;
        return kExitValidationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationFailure;
    }
    return kExitUsageError;
}
