#include "halobench/ref_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace halobench {

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double rouge_l(const TokenizedText& candidate, const TokenizedText& reference) {
    if (candidate.tokens.empty() || reference.tokens.empty()) return 0.0;
    const std::size_t lcs = lcs_length(candidate.tokens, reference.tokens);
    if (lcs == 0) return 0.0;
    const double p = static_cast<double>(lcs) / static_cast<double>(candidate.tokens.size());
    const double r = static_cast<double>(lcs) / static_cast<double>(reference.tokens.size());
    return 2.0 * p * r / (p + r);
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
    NgramCounts counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n))]++;
    }
    return counts;
}

}  // namespace

double bleu(const TokenizedText& candidate, const TokenizedText& reference,
            const BleuParams& params) {
    if (params.max_n < 1) throw std::invalid_argument("bleu: max_n must be >= 1");
    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    if (cand.empty() || ref.empty()) return 0.0;

    double log_sum = 0.0;
    for (int n = 1; n <= params.max_n; ++n) {
        const auto nn = static_cast<std::size_t>(n);
        NgramCounts cand_counts = count_ngrams(cand, nn);
        NgramCounts ref_counts = count_ngrams(ref, nn);
        std::size_t clipped = 0;
        std::size_t total = 0;
        for (const auto& [gram, count] : cand_counts) {
            total += count;
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        double p = (total > 0) ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
        if (p <= 0.0) p = params.smoothing_floor;
        log_sum += std::log(p);
    }
    const double geo_mean = std::exp(log_sum / params.max_n);
    const double ratio =
        static_cast<double>(ref.size()) / static_cast<double>(cand.size());
    const double bp = std::min(1.0, std::exp(1.0 - ratio));
    return bp * geo_mean;
}

std::string stem(const std::string& token) {
    auto ends_with = [&](const char* suf) {
        std::string_view sv(suf);
        return token.size() >= sv.size() &&
               token.compare(token.size() - sv.size(), sv.size(), sv) == 0;
    };
    if (ends_with("ing") && token.size() >= 6) return token.substr(0, token.size() - 3);
    if (ends_with("ed") && token.size() >= 5) return token.substr(0, token.size() - 2);
    if (ends_with("es") && token.size() >= 5) return token.substr(0, token.size() - 2);
    if (ends_with("s") && !ends_with("ss") && token.size() >= 4)
        return token.substr(0, token.size() - 1);
    return token;
}

namespace {

struct Alignment {
    std::size_t matches = 0;
    std::size_t chunks = 0;
};

// Greedy alignment: candidate tokens left to right; a match prefers the
// reference position that continues the current chunk, otherwise the
// earliest available one. Exact stage first, then stems over the leftovers.
Alignment align_unigrams(const std::vector<std::string>& cand,
                         const std::vector<std::string>& ref) {
    std::vector<long> cand_to_ref(cand.size(), -1);
    std::vector<bool> ref_used(ref.size(), false);

    auto run_stage = [&](auto key) {
        std::map<std::string, std::vector<std::size_t>> ref_positions;
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (!ref_used[j]) ref_positions[key(ref[j])].push_back(j);
        }
        long prev_ref = -1;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (cand_to_ref[i] >= 0) {
                prev_ref = cand_to_ref[i];
                continue;
            }
            auto it = ref_positions.find(key(cand[i]));
            if (it == ref_positions.end() || it->second.empty()) continue;
            auto& positions = it->second;
            std::size_t chosen;
            auto next = std::find(positions.begin(), positions.end(),
                                  static_cast<std::size_t>(prev_ref + 1));
            if (prev_ref >= 0 && next != positions.end()) {
                chosen = *next;
                positions.erase(next);
            } else {
                chosen = positions.front();
                positions.erase(positions.begin());
            }
            cand_to_ref[i] = static_cast<long>(chosen);
            ref_used[chosen] = true;
            prev_ref = static_cast<long>(chosen);
        }
    };

    run_stage([](const std::string& w) { return w; });
    run_stage([](const std::string& w) { return stem(w); });

    Alignment out;
    long prev = -2;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (cand_to_ref[i] < 0) {
            prev = -2;
            continue;
        }
        ++out.matches;
        if (cand_to_ref[i] != prev + 1 || prev == -2) ++out.chunks;
        prev = cand_to_ref[i];
    }
    return out;
}

}  // namespace

double meteor(const TokenizedText& candidate, const TokenizedText& reference,
              const MeteorParams& params) {
    const auto& cand = candidate.tokens;
    const auto& ref = reference.tokens;
    if (cand.empty() || ref.empty()) return 0.0;

    const Alignment a = align_unigrams(cand, ref);
    if (a.matches == 0) return 0.0;

    const double m = static_cast<double>(a.matches);
    const double p = m / static_cast<double>(cand.size());
    const double r = m / static_cast<double>(ref.size());
    const double fmean = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
    const double frag = static_cast<double>(a.chunks) / m;
    const double penalty = params.gamma * std::pow(frag, params.beta);
    return fmean * (1.0 - penalty);
}

RefScore score_reference(const TokenizedText& candidate, const TokenizedText& reference,
                         const BleuParams& bleu_params, const MeteorParams& meteor_params) {
    RefScore s;
    s.rouge_l = rouge_l(candidate, reference);
    s.bleu = bleu(candidate, reference, bleu_params);
    s.meteor = meteor(candidate, reference, meteor_params);
    return s;
}

}  // namespace halobench
