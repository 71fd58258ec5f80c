#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "syndial/dialogue.hpp"
#include "syndial/text.hpp"

namespace syndial::metrics {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Unigram overlap with count clipping:
//   matches  = sum over words of min(count_hyp, count_ref)
//   precision = matches / |hyp|, recall = matches / |ref|
// A side with zero tokens contributes 0 for its ratio; f1 = 2pr/(p+r).
RougeScore rouge1_f1(const text::TokenSeq& hypothesis, const text::TokenSeq& reference);
RougeScore rouge1_f1(std::string_view hypothesis, std::string_view reference);

// Per-attempt scores of one generated dialogue.
struct ScoreCard {
    std::optional<double> similarity;  // absent when no reference dialogue exists
    double extractiveness = 0.0;
    double alpha = 0.0;
    double combined = 0.0;
};

// (1 - alpha) * extractiveness + alpha * similarity. Rejects alpha outside
// [0,1] and an absent similarity with alpha > 0.
double combined_score(double extractiveness, std::optional<double> similarity, double alpha);

// ROUGE-1 F1 of the dialogue against the ground-truth dialogue. Throws
// MissingReference when the reference is absent.
RougeScore similarity(const Dialogue& dialogue,
                      const std::optional<std::string>& reference_dialogue,
                      bool include_labels = false);

// ROUGE-1 F1 of the dialogue (hypothesis) against the note (reference):
// how much of the dialogue is drawn from the note.
RougeScore extractiveness(std::string_view note_text, const Dialogue& dialogue,
                          bool include_labels = false);

// BLEU of one hypothesis against a reference set: uniform weights over
// n-gram orders 1..max_order, clipped counts, brevity penalty against the
// closest reference length, add-one smoothing on zero n-gram matches.
double bleu(const text::TokenSeq& hypothesis, const std::vector<text::TokenSeq>& references,
            int max_order = 4);

// Mean BLEU of every text against all the others. Higher = less diverse.
// Throws TooFewTexts for fewer than two texts.
double self_bleu(const std::vector<std::string>& texts, int max_order = 4);

// Set of stemmed concept keys; each key is the space-joined Porter stems of
// one concept phrase's tokens.
struct ConceptSet {
    std::set<std::string> concepts;

    bool empty() const { return concepts.empty(); }
    std::size_t size() const { return concepts.size(); }
};

// Normalizes raw LLM extraction lines: trims whitespace and list markers
// (leading digits, dots, hyphens, bullets), lowercases, drops empties, stems
// per token, dedupes.
ConceptSet build_concept_set(const std::vector<std::string>& raw_lines);

// |note ∩ dialogue| / |note|. Throws EmptyConceptList when the note-side set
// is empty (reported upstream as a missing value, not a zero).
double concept_recall(const ConceptSet& note_concepts, const ConceptSet& dialogue_concepts);

}  // namespace syndial::metrics
