#include <random>

#include "hs/analyses.hpp"

namespace hs {

std::vector<DocumentContour> permute_surprisal(std::span<const DocumentContour> docs,
                                               std::uint64_t seed) {
    std::vector<DocumentContour> out;
    out.reserve(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto tokens = docs[d].tokens();
        std::vector<double> values(tokens.size());
        for (std::size_t i = 0; i < tokens.size(); ++i) values[i] = tokens[i].surprisal;
        std::mt19937_64 rng(seed + d);
        for (std::size_t i = values.size(); i-- > 1;) {
            std::uniform_int_distribution<std::size_t> pick(0, i);
            std::swap(values[i], values[pick(rng)]);
        }
        out.push_back(with_surprisals(docs[d], values));
    }
    return out;
}

}  // namespace hs
