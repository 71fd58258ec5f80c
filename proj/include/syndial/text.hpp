#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace syndial::text {

// Ordered list of lowercase word tokens.
using TokenSeq = std::vector<std::string>;

// Lowercases the input and splits it on every maximal run of non-alphanumeric
// characters, discarding empty fragments. ASCII letters are lowercased; bytes
// outside ASCII (UTF-8 continuations and lead bytes) are treated as
// alphanumeric and passed through unchanged.
TokenSeq tokenize(std::string_view input);

// Space-joins a token sequence.
std::string join(const TokenSeq& tokens);

// N-grams of a fixed order with multiplicities. Keys are space-joined token
// tuples; tokens never contain spaces, so the encoding is unambiguous.
struct NGramCounts {
    int order = 1;
    std::unordered_map<std::string, int> counts;

    // Sum of all multiplicities: max(0, len(tokens) - order + 1).
    long total() const;
};

// Sliding-window n-gram extraction. Throws std::invalid_argument when
// order < 1. An order longer than the sequence yields empty counts.
NGramCounts ngrams(const TokenSeq& tokens, int order);

// Porter (1980) suffix-stripping stemmer, steps 1a through 5b as published.
// The input is lowercased first; words shorter than 3 characters are
// returned unchanged. The output is never longer than the input.
std::string porter_stem(std::string_view word);

}  // namespace syndial::text
