#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "halobench/text.hpp"

namespace halobench {

struct BleuParams {
    int max_n = 4;
    double smoothing_floor = 1e-7;  // applied to any zero n-gram precision
};

struct MeteorParams {
    double alpha = 0.9;   // recall weight in the F-mean
    double beta = 3.0;    // fragmentation penalty exponent
    double gamma = 0.5;   // fragmentation penalty weight
};

// Token-level longest common subsequence length (dynamic programming).
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// LCS F1: P = LCS/|cand|, R = LCS/|ref|, F1 = 2PR/(P+R). 0 when either
// side is empty or there is no common subsequence. Symmetric.
double rouge_l(const TokenizedText& candidate, const TokenizedText& reference);

// Geometric mean of clipped modified n-gram precisions times the brevity
// penalty min(1, e^(1-|ref|/|cand|)). Zero precisions are floored at the
// smoothing floor. Single reference. Throws std::invalid_argument when
// max_n < 1.
double bleu(const TokenizedText& candidate, const TokenizedText& reference,
            const BleuParams& params = {});

// Unigram alignment in two stages (exact match, then suffix-stripping stem
// match), F-mean with alpha-weighted recall, chunk fragmentation penalty.
double meteor(const TokenizedText& candidate, const TokenizedText& reference,
              const MeteorParams& params = {});

// Suffix-stripping stem used by METEOR's second alignment stage.
std::string stem(const std::string& token);

struct RefScore {
    double rouge_l = 0.0;
    double bleu = 0.0;
    double meteor = 0.0;
};

RefScore score_reference(const TokenizedText& candidate, const TokenizedText& reference,
                         const BleuParams& bleu_params = {},
                         const MeteorParams& meteor_params = {});

}  // namespace halobench
