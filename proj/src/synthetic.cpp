#include <cmath>
#include <iostream>
#include <random>

#include "hs/analyses.hpp"
#include "hs/error.hpp"
#include "hs/features.hpp"

namespace hs {

namespace {

void check_range(const IntRange& r, const char* what) {
    if (r.lo < 1 || r.hi < r.lo)
        throw Error(ErrorKind::InvalidSpec, std::string("empty or non-positive range for ") + what);
}

long draw(std::mt19937_64& rng, const IntRange& r) {
    return std::uniform_int_distribution<long>(r.lo, r.hi)(rng);
}

// Splits `total` items into consecutive groups with sizes drawn from `r`;
// the last group takes whatever remains.
std::vector<long> group_sizes(std::mt19937_64& rng, long total, const IntRange& r) {
    std::vector<long> sizes;
    while (total > 0) {
        const long size = std::min(total, draw(rng, r));
        sizes.push_back(size);
        total -= size;
    }
    return sizes;
}

}  // namespace

std::vector<DocumentContour> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_docs == 0) throw Error(ErrorKind::InvalidSpec, "n_docs must be positive");
    if (!(spec.noise_sd >= 0.0) || !std::isfinite(spec.noise_sd))
        throw Error(ErrorKind::InvalidSpec, "noise sd must be finite and >= 0");
    if (!std::isfinite(spec.intercept)) throw Error(ErrorKind::InvalidSpec, "intercept must be finite");
    check_range(spec.edus_per_doc, "edus_per_doc");
    check_range(spec.tokens_per_edu, "tokens_per_edu");
    check_range(spec.edus_per_sentence, "edus_per_sentence");
    check_range(spec.sentences_per_paragraph, "sentences_per_paragraph");
    check_range(spec.chars_per_token, "chars_per_token");
    for (const auto& [key, coef] : spec.harmonics)
        if (key.order == 0 || !std::isfinite(coef.first) || !std::isfinite(coef.second))
            throw Error(ErrorKind::InvalidSpec, "harmonic orders must be >= 1 with finite coefficients");

    std::vector<DocumentContour> docs;
    docs.reserve(spec.n_docs);
    std::size_t clipped = 0;
    std::size_t total = 0;
    for (std::size_t d = 0; d < spec.n_docs; ++d) {
        std::mt19937_64 rng(spec.seed + d);
        const long n_edus = draw(rng, spec.edus_per_doc);
        const auto sentences = group_sizes(rng, n_edus, spec.edus_per_sentence);
        const auto paragraphs =
            group_sizes(rng, static_cast<long>(sentences.size()), spec.sentences_per_paragraph);

        std::vector<TokenRecord> tokens;
        long edu = 0;
        long sent = 0;
        for (long par = 0; par < static_cast<long>(paragraphs.size()); ++par) {
            for (long s = 0; s < paragraphs[par]; ++s, ++sent) {
                for (long e = 0; e < sentences[sent]; ++e, ++edu) {
                    const long length = draw(rng, spec.tokens_per_edu);
                    for (long t = 0; t < length; ++t) {
                        TokenRecord tok;
                        tok.index = tokens.size();
                        tok.n_chars = draw(rng, spec.chars_per_token);
                        tok.text.assign(static_cast<std::size_t>(tok.n_chars),
                                        static_cast<char>('a' + tok.index % 26));
                        tok.edu_id = edu;
                        tok.sent_id = sent;
                        tok.par_id = par;
                        tokens.push_back(std::move(tok));
                    }
                }
            }
        }

        const DocumentContour shape =
            validate_document("synth_" + std::to_string(d), std::move(tokens), "synthetic");
        std::vector<double> values(shape.size(), spec.intercept);
        for (const auto& [key, coef] : spec.harmonics) {
            const auto h = harmonic_features(shape, key.structure, key.order);
            for (std::size_t i = 0; i < values.size(); ++i)
                values[i] += coef.first * h.sin[i] + coef.second * h.cos[i];
        }
        std::normal_distribution<double> noise(0.0, 1.0);
        for (double& v : values) {
            v += spec.noise_sd * noise(rng);
            if (v < 0.0) {
                v = 0.0;
                ++clipped;
            }
        }
        total += values.size();
        docs.push_back(with_surprisals(shape, values));
    }
    if (clipped * 100 > total)
        std::clog << "warning: clipped " << clipped << " of " << total
                  << " synthetic surprisals at zero\n";
    return docs;
}

}  // namespace hs
