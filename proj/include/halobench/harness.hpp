#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "halobench/dataset.hpp"
#include "halobench/halo_metrics.hpp"
#include "halobench/resources.hpp"

namespace halobench {

class HarnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelEndpoint {
    std::string name;
    std::string base_url;   // full chat-completions URL
    std::string model_id;
    std::string auth_env;   // env var holding the credential; empty = none
    double request_timeout = 30.0;  // seconds
    int max_retries = 0;            // extra attempts after the first

    nlohmann::json to_json() const;
    static ModelEndpoint from_json(const nlohmann::json& j);
};

struct RunConfig {
    std::vector<ModelEndpoint> endpoints;
    int concurrency = 4;
    std::string seed_note;
    nlohmann::json params;  // sampling parameters, passed through verbatim

    static RunConfig load(const std::filesystem::path& path);
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

enum class TransportStatus { kOk, kTimeout, kHttpError, kMalformed };

std::string to_string(TransportStatus s);
TransportStatus transport_status_from_string(const std::string& s);

struct ModelResponse {
    std::string prompt_id;
    std::string endpoint_name;
    std::string model_id;
    std::string text;  // empty unless status is ok
    std::string requested_at;  // RFC 3339 UTC
    std::string received_at;
    int attempt = 1;
    TransportStatus status = TransportStatus::kOk;
    int http_code = 0;  // set when status is http_error

    std::string ref() const { return prompt_id + "#" + endpoint_name; }
    nlohmann::json to_json() const;
    static ModelResponse from_json(const nlohmann::json& j);
};

struct RunFile {
    int schema_version = 1;
    std::string toolkit_version;
    std::map<std::string, std::string> lexicon_hashes;
    nlohmann::json config_snapshot;
    std::vector<ModelResponse> responses;

    nlohmann::json to_json() const;
    static RunFile from_json(const nlohmann::json& j);
    static RunFile load(const std::filesystem::path& path);
};

// A run file plus one optional MetricVector per response.
struct ScoredRun {
    RunFile run;
    std::vector<std::optional<MetricVector>> metrics;  // parallel to run.responses
    std::string source_hash;  // hash of the file this was loaded from

    nlohmann::json to_json() const;
    static ScoredRun load(const std::filesystem::path& path);
};

// Queries every (prompt x endpoint) pair, bounded by config.concurrency,
// and writes the run file. Fails fast on an unresolvable credential and
// never overwrites an existing file. Returns the written path.
std::filesystem::path run_benchmark(const Dataset& dataset, const RunConfig& config,
                                    const Resources& resources,
                                    const std::filesystem::path& out_path,
                                    const std::vector<std::string>& endpoint_filter = {});

// Offline, deterministic: attaches a MetricVector to every ok response
// (reference = the prompt's ground-truth text) and writes the scored run.
// Byte-identical output for identical inputs.
void replay_scoring(const std::filesystem::path& run_path, const Dataset& dataset,
                    const Resources& resources, const std::filesystem::path& out_path);

// RFC 3339 UTC with millisecond precision.
std::string utc_timestamp_now();

}  // namespace halobench
