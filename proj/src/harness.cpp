#include "halobench/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>

namespace halobench {

std::string to_string(TransportStatus s) {
    switch (s) {
        case TransportStatus::kOk: return "ok";
        case TransportStatus::kTimeout: return "timeout";
        case TransportStatus::kHttpError: return "http_error";
        case TransportStatus::kMalformed: return "malformed";
    }
    throw HarnessError("unknown transport status");
}

TransportStatus transport_status_from_string(const std::string& s) {
    if (s == "ok") return TransportStatus::kOk;
    if (s == "timeout") return TransportStatus::kTimeout;
    if (s == "http_error") return TransportStatus::kHttpError;
    if (s == "malformed") return TransportStatus::kMalformed;
    throw HarnessError("unknown transport status: \"" + s + "\"");
}

std::string utc_timestamp_now() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const auto ms = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
    const std::time_t tt = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<int>(ms.count()));
    return buf;
}

nlohmann::json ModelEndpoint::to_json() const {
    return {{"name", name},
            {"base_url", base_url},
            {"model_id", model_id},
            {"auth_env", auth_env},
            {"request_timeout", request_timeout},
            {"max_retries", max_retries}};
}

ModelEndpoint ModelEndpoint::from_json(const nlohmann::json& j) {
    ModelEndpoint e;
    e.name = j.at("name").get<std::string>();
    e.base_url = j.at("base_url").get<std::string>();
    e.model_id = j.at("model_id").get<std::string>();
    e.auth_env = j.value("auth_env", std::string{});
    e.request_timeout = j.value("request_timeout", 30.0);
    e.max_retries = j.value("max_retries", 0);
    if (e.name.empty()) throw HarnessError("endpoint name must be nonempty");
    if (e.request_timeout <= 0) throw HarnessError("endpoint timeout must be > 0");
    if (e.max_retries < 0) throw HarnessError("endpoint max_retries must be >= 0");
    return e;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    for (const auto& ej : j.at("endpoints")) {
        c.endpoints.push_back(ModelEndpoint::from_json(ej));
    }
    for (std::size_t i = 0; i < c.endpoints.size(); ++i) {
        for (std::size_t k = i + 1; k < c.endpoints.size(); ++k) {
            if (c.endpoints[i].name == c.endpoints[k].name) {
                throw HarnessError("duplicate endpoint name: \"" + c.endpoints[i].name + "\"");
            }
        }
    }
    c.concurrency = j.value("concurrency", 4);
    if (c.concurrency < 1) throw HarnessError("concurrency must be >= 1");
    c.seed_note = j.value("seed_note", std::string{});
    c.params = j.value("params", nlohmann::json::object());
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open run config: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw HarnessError("malformed run config JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["endpoints"] = nlohmann::json::array();
    for (const auto& e : endpoints) j["endpoints"].push_back(e.to_json());
    j["concurrency"] = concurrency;
    j["seed_note"] = seed_note;
    j["params"] = params;
    return j;
}

nlohmann::json ModelResponse::to_json() const {
    nlohmann::json j{{"prompt_id", prompt_id},
                     {"endpoint_name", endpoint_name},
                     {"model_id", model_id},
                     {"text", text},
                     {"requested_at", requested_at},
                     {"received_at", received_at},
                     {"attempt", attempt},
                     {"transport_status", halobench::to_string(status)}};
    if (status == TransportStatus::kHttpError) j["http_code"] = http_code;
    return j;
}

ModelResponse ModelResponse::from_json(const nlohmann::json& j) {
    ModelResponse r;
    r.prompt_id = j.at("prompt_id").get<std::string>();
    r.endpoint_name = j.at("endpoint_name").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.text = j.at("text").get<std::string>();
    r.requested_at = j.at("requested_at").get<std::string>();
    r.received_at = j.at("received_at").get<std::string>();
    r.attempt = j.at("attempt").get<int>();
    r.status = transport_status_from_string(j.at("transport_status").get<std::string>());
    r.http_code = j.value("http_code", 0);
    return r;
}

nlohmann::json RunFile::to_json() const {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["toolkit_version"] = toolkit_version;
    j["lexicon_hashes"] = lexicon_hashes;
    j["config_snapshot"] = config_snapshot;
    j["responses"] = nlohmann::json::array();
    for (const auto& r : responses) j["responses"].push_back(r.to_json());
    return j;
}

RunFile RunFile::from_json(const nlohmann::json& j) {
    RunFile f;
    f.schema_version = j.value("schema_version", 1);
    f.toolkit_version = j.value("toolkit_version", std::string{});
    if (j.contains("lexicon_hashes")) {
        for (const auto& [k, v] : j.at("lexicon_hashes").items()) {
            f.lexicon_hashes[k] = v.get<std::string>();
        }
    }
    f.config_snapshot = j.value("config_snapshot", nlohmann::json::object());
    if (!j.contains("responses") || !j.at("responses").is_array()) {
        throw HarnessError("run file schema mismatch: missing responses array");
    }
    for (const auto& rj : j.at("responses")) f.responses.push_back(ModelResponse::from_json(rj));
    return f;
}

RunFile RunFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open run file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw HarnessError("malformed run file JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json ScoredRun::to_json() const {
    nlohmann::json j = run.to_json();
    for (std::size_t i = 0; i < run.responses.size(); ++i) {
        j["responses"][i]["metrics"] =
            metrics[i] ? metrics[i]->to_json() : nlohmann::json(nullptr);
    }
    return j;
}

ScoredRun ScoredRun::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw HarnessError("cannot open scored run file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw HarnessError("malformed scored run JSON: " + std::string(e.what()));
    }
    ScoredRun s;
    s.run = RunFile::from_json(j);
    for (const auto& rj : j.at("responses")) {
        if (rj.contains("metrics") && !rj.at("metrics").is_null()) {
            s.metrics.push_back(MetricVector::from_json(rj.at("metrics")));
        } else {
            s.metrics.push_back(std::nullopt);
        }
    }
    s.source_hash = file_hash_hex(path);
    return s;
}

namespace {

struct ParsedUrl {
    bool https = false;
    std::string host_port;  // scheme://host:port
    std::string path;
};

ParsedUrl parse_url(const std::string& url) {
    ParsedUrl p;
    std::string rest;
    if (url.rfind("https://", 0) == 0) {
        p.https = true;
        rest = url.substr(8);
    } else if (url.rfind("http://", 0) == 0) {
        rest = url.substr(7);
    } else {
        throw HarnessError("endpoint base_url must be http(s): " + url);
    }
    auto slash = rest.find('/');
    std::string host = (slash == std::string::npos) ? rest : rest.substr(0, slash);
    p.path = (slash == std::string::npos) ? "/" : rest.substr(slash);
    p.host_port = (p.https ? "https://" : "http://") + host;
    return p;
}

ModelResponse query_once(const ModelEndpoint& endpoint, const PromptRecord& prompt,
                         const nlohmann::json& params, const char* credential) {
    ModelResponse resp;
    resp.prompt_id = prompt.id;
    resp.endpoint_name = endpoint.name;
    resp.model_id = endpoint.model_id;

    nlohmann::json body = params.is_object() ? params : nlohmann::json::object();
    body["model"] = endpoint.model_id;
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt.text}}});

    const ParsedUrl url = parse_url(endpoint.base_url);
    httplib::Client client(url.host_port);
    const auto timeout_ms =
        std::chrono::milliseconds(static_cast<long>(endpoint.request_timeout * 1000.0));
    client.set_connection_timeout(timeout_ms);
    client.set_read_timeout(timeout_ms);
    client.set_write_timeout(timeout_ms);
    httplib::Headers headers;
    if (credential != nullptr) {
        headers.emplace("Authorization", std::string("Bearer ") + credential);
    }

    const int max_attempts = 1 + endpoint.max_retries;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        resp.attempt = attempt;
        resp.requested_at = utc_timestamp_now();
        auto result = client.Post(url.path, headers, body.dump(), "application/json");
        resp.received_at = utc_timestamp_now();
        if (!result) {
            resp.status = TransportStatus::kTimeout;
            resp.text.clear();
            continue;  // retry on transport failure
        }
        if (result->status >= 500) {
            resp.status = TransportStatus::kHttpError;
            resp.http_code = result->status;
            resp.text.clear();
            continue;  // retry on server error
        }
        if (result->status != 200) {
            resp.status = TransportStatus::kHttpError;
            resp.http_code = result->status;
            resp.text.clear();
            return resp;  // client error: no retry
        }
        try {
            nlohmann::json rj = nlohmann::json::parse(result->body);
            resp.text = rj.at("choices").at(0).at("message").at("content").get<std::string>();
            resp.status = TransportStatus::kOk;
            resp.http_code = 0;
            return resp;
        } catch (const nlohmann::json::exception&) {
            resp.status = TransportStatus::kMalformed;
            resp.text.clear();
            return resp;
        }
    }
    return resp;  // last failed attempt
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw HarnessError("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw HarnessError("write failure: " + path.string());
}

}  // namespace

std::filesystem::path run_benchmark(const Dataset& dataset, const RunConfig& config,
                                    const Resources& resources,
                                    const std::filesystem::path& out_path,
                                    const std::vector<std::string>& endpoint_filter) {
    if (std::filesystem::exists(out_path)) {
        throw HarnessError("run file already exists (runs are append-only): " +
                           out_path.string());
    }

    std::vector<ModelEndpoint> endpoints;
    for (const auto& e : config.endpoints) {
        if (!endpoint_filter.empty() &&
            std::find(endpoint_filter.begin(), endpoint_filter.end(), e.name) ==
                endpoint_filter.end()) {
            continue;
        }
        endpoints.push_back(e);
    }

    // fail fast on credentials before any request goes out
    std::map<std::string, const char*> credentials;
    for (const auto& e : endpoints) {
        if (e.auth_env.empty()) {
            credentials[e.name] = nullptr;
            continue;
        }
        const char* cred = std::getenv(e.auth_env.c_str());
        if (cred == nullptr || *cred == '\0') {
            throw HarnessError("unresolvable credential: environment variable " + e.auth_env +
                               " (endpoint \"" + e.name + "\") is not set");
        }
        credentials[e.name] = cred;
    }

    struct Task {
        const PromptRecord* prompt;
        const ModelEndpoint* endpoint;
    };
    std::vector<Task> tasks;
    for (const auto& p : dataset.prompts) {
        for (const auto& e : endpoints) tasks.push_back({&p, &e});
    }

    std::vector<ModelResponse> responses(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            responses[i] = query_once(*tasks[i].endpoint, *tasks[i].prompt, config.params,
                                      credentials.at(tasks[i].endpoint->name));
        }
    };
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(config.concurrency),
                              std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    RunFile file;
    file.toolkit_version = HALOBENCH_VERSION;
    file.lexicon_hashes = resources.lexicon_hashes();
    file.config_snapshot = config.to_json();
    file.responses = std::move(responses);
    write_json_file(out_path, file.to_json());
    return out_path;
}

void replay_scoring(const std::filesystem::path& run_path, const Dataset& dataset,
                    const Resources& resources, const std::filesystem::path& out_path) {
    RunFile run = RunFile::load(run_path);
    HaloScorer scorer(resources);

    ScoredRun scored;
    scored.run = std::move(run);
    scored.metrics.resize(scored.run.responses.size());
    for (std::size_t i = 0; i < scored.run.responses.size(); ++i) {
        const ModelResponse& r = scored.run.responses[i];
        if (dataset.find_prompt(r.prompt_id) == nullptr) {
            throw HarnessError("dangling prompt_id in run file: \"" + r.prompt_id + "\"");
        }
        if (r.status != TransportStatus::kOk) continue;
        const GroundTruthAnswer* gt = dataset.find_ground_truth(r.prompt_id);
        if (gt != nullptr) {
            scored.metrics[i] = scorer.evaluate(r.text, gt->text);
        } else {
            scored.metrics[i] = scorer.evaluate(r.text);
        }
    }
    write_json_file(out_path, scored.to_json());
}

}  // namespace halobench
