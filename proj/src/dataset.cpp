#include "halobench/dataset.hpp"

#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace halobench {

std::string to_string(HallucinationCategory c) {
    switch (c) {
        case HallucinationCategory::kIncoherent: return "incoherent";
        case HallucinationCategory::kFactualContradiction: return "factual_contradiction";
        case HallucinationCategory::kFactualGeneralization: return "factual_generalization";
        case HallucinationCategory::kUnverified: return "unverified";
    }
    throw DatasetError("unknown hallucination category");
}

HallucinationCategory category_from_string(const std::string& s) {
    if (s == "incoherent") return HallucinationCategory::kIncoherent;
    if (s == "factual_contradiction") return HallucinationCategory::kFactualContradiction;
    if (s == "factual_generalization") return HallucinationCategory::kFactualGeneralization;
    if (s == "unverified") return HallucinationCategory::kUnverified;
    throw DatasetError("unknown hallucination category: \"" + s + "\"");
}

const PromptRecord* Dataset::find_prompt(const std::string& id) const {
    for (const auto& p : prompts) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const GroundTruthAnswer* Dataset::find_ground_truth(const std::string& prompt_id) const {
    std::string current = prompt_id;
    // walk the perturbation lineage toward the canonical root; load-time
    // validation guarantees the walk terminates
    while (true) {
        for (const auto& gt : ground_truth) {
            if (gt.prompt_id == current) return &gt;
        }
        const PromptRecord* p = find_prompt(current);
        if (p == nullptr || !p->parent_id) return nullptr;
        current = *p->parent_id;
    }
}

namespace {

std::string require_string(const nlohmann::json& j, const std::string& path,
                           const char* field) {
    if (!j.contains(field) || !j.at(field).is_string()) {
        throw DatasetError("schema violation at " + path + "." + field +
                           ": expected string");
    }
    return j.at(field).get<std::string>();
}

std::string require_nonempty(const nlohmann::json& j, const std::string& path,
                             const char* field) {
    std::string s = require_string(j, path, field);
    if (s.empty()) {
        throw DatasetError("schema violation at " + path + "." + field +
                           ": must be nonempty");
    }
    return s;
}

}  // namespace

Dataset dataset_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DatasetError("schema violation at $: expected object");
    Dataset d;
    d.schema_version = j.value("schema_version", 1);
    if (j.contains("domain_lexicon_hashes")) {
        for (const auto& [k, v] : j.at("domain_lexicon_hashes").items()) {
            d.domain_lexicon_hashes[k] = v.get<std::string>();
        }
    }

    if (!j.contains("prompts") || !j.at("prompts").is_array()) {
        throw DatasetError("schema violation at $.prompts: expected array");
    }
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < j.at("prompts").size(); ++i) {
        const auto& pj = j.at("prompts").at(i);
        const std::string path = "prompts[" + std::to_string(i) + "]";
        PromptRecord p;
        p.id = require_nonempty(pj, path, "id");
        p.domain = require_nonempty(pj, path, "domain");
        p.text = require_string(pj, path, "text");
        if (pj.contains("parent_id") && !pj.at("parent_id").is_null()) {
            p.parent_id = require_nonempty(pj, path, "parent_id");
        }
        if (!ids.insert(p.id).second) {
            throw DatasetError("duplicate prompt id: \"" + p.id + "\"");
        }
        d.prompts.push_back(std::move(p));
    }

    // parent references resolve and the lineage forms a forest (no cycles)
    for (const auto& p : d.prompts) {
        if (p.parent_id && ids.count(*p.parent_id) == 0) {
            throw DatasetError("dangling parent_id \"" + *p.parent_id + "\" on prompt \"" +
                               p.id + "\"");
        }
    }
    for (const auto& p : d.prompts) {
        std::unordered_set<std::string> seen{p.id};
        const PromptRecord* cur = &p;
        while (cur->parent_id) {
            cur = d.find_prompt(*cur->parent_id);
            if (!seen.insert(cur->id).second) {
                throw DatasetError("cyclic perturbation lineage through prompt \"" + cur->id +
                                   "\"");
            }
        }
    }

    if (j.contains("ground_truth")) {
        std::unordered_set<std::string> gt_ids;
        for (std::size_t i = 0; i < j.at("ground_truth").size(); ++i) {
            const auto& gj = j.at("ground_truth").at(i);
            const std::string path = "ground_truth[" + std::to_string(i) + "]";
            GroundTruthAnswer gt;
            gt.prompt_id = require_nonempty(gj, path, "prompt_id");
            gt.text = require_string(gj, path, "text");
            gt.expert_role = require_string(gj, path, "expert_role");
            if (gj.contains("sources")) {
                for (const auto& s : gj.at("sources")) gt.sources.push_back(s.get<std::string>());
            }
            if (gj.contains("alternatives")) {
                for (std::size_t a = 0; a < gj.at("alternatives").size(); ++a) {
                    const auto& aj = gj.at("alternatives").at(a);
                    const std::string apath = path + ".alternatives[" + std::to_string(a) + "]";
                    Alternative alt;
                    alt.position = require_nonempty(aj, apath, "position");
                    alt.justification = require_nonempty(aj, apath, "justification");
                    alt.rejection_reason = require_nonempty(aj, apath, "rejection_reason");
                    gt.alternatives.push_back(std::move(alt));
                }
            }
            if (ids.count(gt.prompt_id) == 0) {
                throw DatasetError("dangling prompt_id \"" + gt.prompt_id + "\" at " + path);
            }
            if (!gt_ids.insert(gt.prompt_id).second) {
                throw DatasetError("duplicate ground truth for prompt \"" + gt.prompt_id +
                                   "\"");
            }
            d.ground_truth.push_back(std::move(gt));
        }
    }

    if (j.contains("labels")) {
        for (std::size_t i = 0; i < j.at("labels").size(); ++i) {
            const auto& lj = j.at("labels").at(i);
            const std::string path = "labels[" + std::to_string(i) + "]";
            HallucinationLabel label;
            label.response_ref = require_nonempty(lj, path, "response_ref");
            if (!lj.contains("is_hallucination") || !lj.at("is_hallucination").is_boolean()) {
                throw DatasetError("schema violation at " + path +
                                   ".is_hallucination: expected boolean");
            }
            label.is_hallucination = lj.at("is_hallucination").get<bool>();
            if (lj.contains("categories")) {
                for (const auto& c : lj.at("categories")) {
                    label.categories.push_back(category_from_string(c.get<std::string>()));
                }
            }
            label.annotator = lj.value("annotator", std::string{});
            d.labels.push_back(std::move(label));
        }
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DatasetError("malformed dataset JSON in " + path.string() + ": " + e.what());
    }
    return dataset_from_json(j);
}

nlohmann::json Dataset::to_json() const {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["domain_lexicon_hashes"] = domain_lexicon_hashes;
    j["prompts"] = nlohmann::json::array();
    for (const auto& p : prompts) {
        nlohmann::json pj{{"id", p.id}, {"domain", p.domain}, {"text", p.text}};
        if (p.parent_id) pj["parent_id"] = *p.parent_id;
        j["prompts"].push_back(std::move(pj));
    }
    j["ground_truth"] = nlohmann::json::array();
    for (const auto& gt : ground_truth) {
        nlohmann::json gj{{"prompt_id", gt.prompt_id},
                          {"text", gt.text},
                          {"expert_role", gt.expert_role},
                          {"sources", gt.sources}};
        gj["alternatives"] = nlohmann::json::array();
        for (const auto& a : gt.alternatives) {
            gj["alternatives"].push_back({{"position", a.position},
                                          {"justification", a.justification},
                                          {"rejection_reason", a.rejection_reason}});
        }
        j["ground_truth"].push_back(std::move(gj));
    }
    j["labels"] = nlohmann::json::array();
    for (const auto& l : labels) {
        nlohmann::json lj{{"response_ref", l.response_ref},
                          {"is_hallucination", l.is_hallucination},
                          {"annotator", l.annotator}};
        lj["categories"] = nlohmann::json::array();
        for (auto c : l.categories) lj["categories"].push_back(to_string(c));
        j["labels"].push_back(std::move(lj));
    }
    return j;
}

std::vector<LabelViolation> validate_labels(const Dataset& dataset) {
    std::vector<LabelViolation> out;
    for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
        const auto& l = dataset.labels[i];
        if (l.is_hallucination && l.categories.empty()) {
            out.push_back({i, "label " + l.response_ref +
                                  ": is_hallucination=true requires nonempty categories"});
        }
        if (!l.is_hallucination && !l.categories.empty()) {
            out.push_back({i, "label " + l.response_ref +
                                  ": is_hallucination=false requires empty categories"});
        }
    }
    return out;
}

std::vector<PromptRecord> perturb_prompts(const PromptRecord& canonical,
                                          const std::vector<RewriteTemplate>& templates) {
    std::vector<PromptRecord> out;
    for (const auto& tpl : templates) {
        PromptRecord child;
        child.id = canonical.id + "+" + tpl.name;
        child.domain = canonical.domain;
        child.parent_id = canonical.id;
        switch (tpl.kind) {
            case RewriteTemplate::Kind::kPrefix:
                child.text = tpl.to + canonical.text;
                break;
            case RewriteTemplate::Kind::kSubstitute: {
                auto pos = canonical.text.find(tpl.from);
                if (pos == std::string::npos) {
                    throw DatasetError("template \"" + tpl.name + "\": prompt \"" +
                                       canonical.id + "\" lacks substitution slot \"" +
                                       tpl.from + "\"");
                }
                std::string text = canonical.text;
                while (pos != std::string::npos) {
                    text.replace(pos, tpl.from.size(), tpl.to);
                    pos = text.find(tpl.from, pos + tpl.to.size());
                }
                child.text = std::move(text);
                break;
            }
            case RewriteTemplate::Kind::kPunctuation: {
                std::string text = canonical.text;
                if (!tpl.from.empty() && text.size() >= tpl.from.size() &&
                    text.compare(text.size() - tpl.from.size(), tpl.from.size(), tpl.from) ==
                        0) {
                    text.erase(text.size() - tpl.from.size());
                }
                text += tpl.to;
                child.text = std::move(text);
                break;
            }
        }
        out.push_back(std::move(child));
    }
    return out;
}

}  // namespace halobench
