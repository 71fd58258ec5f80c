#include "syndial/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

#include "syndial/errors.hpp"

namespace syndial::metrics {

RougeScore rouge1_f1(const text::TokenSeq& hypothesis, const text::TokenSeq& reference) {
    std::unordered_map<std::string_view, long> ref_counts;
    for (const auto& token : reference) {
        ++ref_counts[token];
    }
    std::unordered_map<std::string_view, long> hyp_counts;
    for (const auto& token : hypothesis) {
        ++hyp_counts[token];
    }
    long matches = 0;
    for (const auto& [token, count] : hyp_counts) {
        auto it = ref_counts.find(token);
        if (it != ref_counts.end()) {
            matches += std::min(count, it->second);
        }
    }
    RougeScore score;
    score.precision = hypothesis.empty() ? 0.0 : static_cast<double>(matches) / hypothesis.size();
    score.recall = reference.empty() ? 0.0 : static_cast<double>(matches) / reference.size();
    if (score.precision + score.recall > 0.0) {
        score.f1 = 2.0 * score.precision * score.recall / (score.precision + score.recall);
    }
    return score;
}

RougeScore rouge1_f1(std::string_view hypothesis, std::string_view reference) {
    return rouge1_f1(text::tokenize(hypothesis), text::tokenize(reference));
}

double combined_score(double extractiveness, std::optional<double> similarity, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) {
        throw std::invalid_argument("alpha must lie in [0,1]");
    }
    if (!similarity.has_value()) {
        if (alpha > 0.0) {
            throw std::invalid_argument("alpha > 0 requires a similarity score");
        }
        return extractiveness;
    }
    return (1.0 - alpha) * extractiveness + alpha * *similarity;
}

RougeScore similarity(const Dialogue& dialogue,
                      const std::optional<std::string>& reference_dialogue,
                      bool include_labels) {
    if (!reference_dialogue.has_value()) {
        throw MissingReference("no ground-truth dialogue for this note");
    }
    return rouge1_f1(metric_text(dialogue, include_labels), *reference_dialogue);
}

RougeScore extractiveness(std::string_view note_text, const Dialogue& dialogue,
                          bool include_labels) {
    return rouge1_f1(metric_text(dialogue, include_labels), note_text);
}

double bleu(const text::TokenSeq& hypothesis, const std::vector<text::TokenSeq>& references,
            int max_order) {
    if (references.empty()) {
        throw std::invalid_argument("bleu needs at least one reference");
    }
    if (max_order < 1) {
        throw std::invalid_argument("bleu max_order must be >= 1");
    }
    const long hyp_len = static_cast<long>(hypothesis.size());
    if (hyp_len == 0) {
        return 0.0;
    }

    double log_sum = 0.0;
    for (int order = 1; order <= max_order; ++order) {
        const auto hyp_grams = text::ngrams(hypothesis, order);
        std::unordered_map<std::string, int> max_ref_counts;
        for (const auto& reference : references) {
            for (const auto& [gram, count] : text::ngrams(reference, order).counts) {
                auto& best = max_ref_counts[gram];
                best = std::max(best, count);
            }
        }
        long matches = 0;
        long total = 0;
        for (const auto& [gram, count] : hyp_grams.counts) {
            total += count;
            auto it = max_ref_counts.find(gram);
            if (it != max_ref_counts.end()) {
                matches += std::min(count, it->second);
            }
        }
        const double precision = matches > 0
                                     ? static_cast<double>(matches) / static_cast<double>(total)
                                     : 1.0 / static_cast<double>(total + 1);
        log_sum += std::log(precision) / max_order;
    }

    // Brevity penalty against the reference length closest to the hypothesis
    // length, resolving ties toward the shorter reference.
    long closest = static_cast<long>(references.front().size());
    for (const auto& reference : references) {
        const long len = static_cast<long>(reference.size());
        if (std::llabs(len - hyp_len) < std::llabs(closest - hyp_len) ||
            (std::llabs(len - hyp_len) == std::llabs(closest - hyp_len) && len < closest)) {
            closest = len;
        }
    }
    const double brevity = hyp_len >= closest
                               ? 1.0
                               : std::exp(1.0 - static_cast<double>(closest) / hyp_len);
    return brevity * std::exp(log_sum);
}

double self_bleu(const std::vector<std::string>& texts, int max_order) {
    if (texts.size() < 2) {
        throw TooFewTexts("self-BLEU needs at least two texts, got " +
                          std::to_string(texts.size()));
    }
    std::vector<text::TokenSeq> tokenized;
    tokenized.reserve(texts.size());
    for (const auto& t : texts) {
        tokenized.push_back(text::tokenize(t));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < tokenized.size(); ++i) {
        std::vector<text::TokenSeq> references;
        references.reserve(tokenized.size() - 1);
        for (std::size_t j = 0; j < tokenized.size(); ++j) {
            if (j != i) {
                references.push_back(tokenized[j]);
            }
        }
        sum += bleu(tokenized[i], references, max_order);
    }
    return sum / static_cast<double>(tokenized.size());
}

namespace {

// Strips leading list markers: whitespace, digits, dots, hyphens, asterisks,
// plus signs, closing parens, and UTF-8 bullets.
std::string_view strip_list_marker(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size()) {
        const unsigned char c = line[i];
        if (std::isspace(c) || std::isdigit(c) || c == '-' || c == '*' || c == '+' ||
            c == '.' || c == ')') {
            ++i;
            continue;
        }
        // UTF-8 bullet U+2022
        if (c == 0xE2 && i + 2 < line.size() &&
            static_cast<unsigned char>(line[i + 1]) == 0x80 &&
            static_cast<unsigned char>(line[i + 2]) == 0xA2) {
            i += 3;
            continue;
        }
        break;
    }
    return line.substr(i);
}

}  // namespace

ConceptSet build_concept_set(const std::vector<std::string>& raw_lines) {
    ConceptSet result;
    for (const auto& line : raw_lines) {
        const auto phrase = strip_list_marker(line);
        const auto tokens = text::tokenize(phrase);
        if (tokens.empty()) {
            continue;
        }
        std::string key;
        for (const auto& token : tokens) {
            if (!key.empty()) {
                key.push_back(' ');
            }
            key += text::porter_stem(token);
        }
        result.concepts.insert(std::move(key));
    }
    return result;
}

double concept_recall(const ConceptSet& note_concepts, const ConceptSet& dialogue_concepts) {
    if (note_concepts.empty()) {
        throw EmptyConceptList("note-side concept set is empty");
    }
    std::size_t hits = 0;
    for (const auto& concept : note_concepts.concepts) {
        if (dialogue_concepts.concepts.count(concept) > 0) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(note_concepts.size());
}

}  // namespace syndial::metrics
