#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace halobench {

class DatasetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PromptRecord {
    std::string id;
    std::string domain;  // "politics", "medicine", or a custom name
    std::string text;
    std::optional<std::string> parent_id;  // canonical prompt this perturbs

    bool operator==(const PromptRecord&) const = default;
};

struct Alternative {
    std::string position;
    std::string justification;
    std::string rejection_reason;

    bool operator==(const Alternative&) const = default;
};

struct GroundTruthAnswer {
    std::string prompt_id;
    std::string text;
    std::string expert_role;
    std::vector<std::string> sources;
    std::vector<Alternative> alternatives;

    bool operator==(const GroundTruthAnswer&) const = default;
};

enum class HallucinationCategory {
    kIncoherent,
    kFactualContradiction,
    kFactualGeneralization,
    kUnverified
};

std::string to_string(HallucinationCategory c);
HallucinationCategory category_from_string(const std::string& s);

struct HallucinationLabel {
    std::string response_ref;  // "<prompt_id>#<endpoint_name>"
    bool is_hallucination = false;
    std::vector<HallucinationCategory> categories;
    std::string annotator;

    bool operator==(const HallucinationLabel&) const = default;
};

struct Dataset {
    int schema_version = 1;
    std::map<std::string, std::string> domain_lexicon_hashes;
    std::vector<PromptRecord> prompts;
    std::vector<GroundTruthAnswer> ground_truth;
    std::vector<HallucinationLabel> labels;

    const PromptRecord* find_prompt(const std::string& id) const;
    // Ground truth for a prompt; perturbed prompts inherit the answer of
    // their canonical root.
    const GroundTruthAnswer* find_ground_truth(const std::string& prompt_id) const;

    nlohmann::json to_json() const;
    bool operator==(const Dataset&) const = default;
};

// Parses and fully validates. Throws DatasetError naming the offending
// field path, duplicate id, dangling reference, or lineage cycle.
Dataset dataset_from_json(const nlohmann::json& j);
Dataset load_dataset(const std::filesystem::path& path);

struct LabelViolation {
    std::size_t label_index = 0;
    std::string message;
};

// Labels whose categories/is_hallucination combination breaks the schema
// invariant. Violations are data, not failures.
std::vector<LabelViolation> validate_labels(const Dataset& dataset);

struct RewriteTemplate {
    enum class Kind { kPrefix, kSubstitute, kPunctuation };
    std::string name;
    Kind kind = Kind::kPrefix;
    std::string from;  // substitution slot (kSubstitute) or suffix (kPunctuation)
    std::string to;
};

// Deterministic surface rewrites; each child carries parent_id =
// canonical.id and id = canonical.id + "+" + template name. Throws
// DatasetError when a substitution slot is missing from the prompt.
std::vector<PromptRecord> perturb_prompts(const PromptRecord& canonical,
                                          const std::vector<RewriteTemplate>& templates);

}  // namespace halobench
