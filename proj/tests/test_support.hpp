#pragma once

#include <string>
#include <vector>

#include "hs/analyses.hpp"
#include "hs/contour.hpp"

namespace hs::testing {

// Builds a validated document from per-token columns. Sentence and
// paragraph ids default to a single unit.
inline DocumentContour make_doc(std::vector<long> edu, std::vector<long> sent = {},
                                std::vector<long> par = {}, std::vector<double> surprisal = {},
                                std::string id = "doc") {
    const std::size_t n = edu.size();
    if (sent.empty()) sent.assign(n, 0);
    if (par.empty()) par.assign(n, 0);
    if (surprisal.empty()) surprisal.assign(n, 1.0);
    std::vector<TokenRecord> tokens(n);
    for (std::size_t i = 0; i < n; ++i) {
        tokens[i].index = i;
        tokens[i].text = "w" + std::to_string(i);
        tokens[i].surprisal = surprisal[i];
        tokens[i].n_chars = static_cast<long>(tokens[i].text.size());
        tokens[i].edu_id = edu[i];
        tokens[i].sent_id = sent[i];
        tokens[i].par_id = par[i];
    }
    return validate_document(std::move(id), std::move(tokens));
}

// The corpus used by the end-to-end recovery checks: 50 documents of 8-12
// EDUs with 8-20 tokens, 1-3 EDUs per sentence, 1-3 sentences per
// paragraph, intercept 5, unit noise and EDU harmonics of amplitude 0.6
// (k = 1) and 0.3 (k = 2).
inline SyntheticSpec recovery_spec(std::uint64_t seed = 20240611) {
    SyntheticSpec spec;
    spec.n_docs = 50;
    spec.edus_per_doc = {8, 12};
    spec.tokens_per_edu = {8, 20};
    spec.edus_per_sentence = {1, 3};
    spec.sentences_per_paragraph = {1, 3};
    spec.intercept = 5.0;
    spec.noise_sd = 1.0;
    spec.seed = seed;
    spec.harmonics[{Structure::Edu, 1}] = {0.36, 0.48};    // amplitude 0.6
    spec.harmonics[{Structure::Edu, 2}] = {0.18, -0.24};   // amplitude 0.3
    return spec;
}

}  // namespace hs::testing
