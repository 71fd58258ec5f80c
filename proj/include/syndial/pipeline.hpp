#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syndial/corpus.hpp"
#include "syndial/dialogue.hpp"
#include "syndial/llm.hpp"
#include "syndial/metrics.hpp"

namespace syndial::pipeline {

struct PipelineConfig {
    double alpha = 0.1;          // weight of similarity in the combined score
    double threshold = 0.55;     // combined-score acceptance bar
    int max_iterations = 3;
    long token_gate = 4000;      // summarize notes estimated above this
    int summary_target_tokens = 300;
    bool history_mode = false;   // feed the previous visit's dialogue forward
    bool include_labels_in_metrics = false;

    std::string model = "gpt-3.5-turbo";
    double generation_temperature = 0.7;
    double auxiliary_temperature = 0.0;  // summarization and extraction
    int max_output_tokens = 2048;
};

enum class Termination { threshold_met, iteration_cap };

std::string_view termination_name(Termination termination);
Termination termination_from_name(std::string_view name);

struct DialogueAttempt {
    int iteration = 1;  // consecutive within a trace, starting at 1
    Dialogue dialogue;
    metrics::ScoreCard scores;
};

struct GenerationTrace {
    std::string note_id;
    bool summarized = false;
    std::vector<DialogueAttempt> attempts;
    int selected = -1;  // argmax combined score; ties go to the lowest index
    Termination termination = Termination::iteration_cap;
    int generate_calls = 0;
    int summarize_calls = 0;
    bool history_used = false;
    bool failed = false;
    std::string failure_reason;
};

// Scores one attempt. Extractiveness is always measured against the original
// note text, even when the prompt used a summary.
class Scorer {
public:
    virtual ~Scorer() = default;
    virtual metrics::ScoreCard score(const corpus::ClinicalNote& note, const Dialogue& dialogue,
                                     double alpha) const = 0;
};

class RougeScorer : public Scorer {
public:
    explicit RougeScorer(bool include_labels = false) : include_labels_(include_labels) {}
    metrics::ScoreCard score(const corpus::ClinicalNote& note, const Dialogue& dialogue,
                             double alpha) const override;

private:
    bool include_labels_;
};

// Runs the full loop for one note: length gate -> optional summarize ->
// generate / score / threshold test -> feedback regenerate (up to
// cfg.max_iterations attempts) -> best-of selection. Backend failures yield
// a partial trace with failed = true rather than an exception.
GenerationTrace run_note(const corpus::ClinicalNote& note, const PipelineConfig& cfg,
                         llm::Backend& backend, const Scorer& scorer,
                         const std::optional<std::string>& history = std::nullopt);

// Runs one patient's visits in order; each visit after the first embeds the
// previous visit's selected dialogue in its prompts.
std::vector<GenerationTrace> run_patient_history(const std::vector<corpus::ClinicalNote>& visits,
                                                 const PipelineConfig& cfg, llm::Backend& backend,
                                                 const Scorer& scorer);

// Runs every note with at most `parallelism` notes in flight. Output order
// matches input order; per-note failures are recorded in the trace, never
// fatal. With history_mode, notes sharing a patient_id run as one ordered
// group (by visit_seq) and groups run concurrently.
std::vector<GenerationTrace> run_corpus(const corpus::Corpus& corpus, const PipelineConfig& cfg,
                                        llm::Backend& backend, const Scorer& scorer,
                                        int parallelism = 1);

}  // namespace syndial::pipeline
