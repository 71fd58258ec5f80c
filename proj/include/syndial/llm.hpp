#pragma once

#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "syndial/metrics.hpp"

namespace syndial::llm {

enum class Purpose { generate, summarize, extract_concepts };

std::string_view purpose_name(Purpose purpose);
Purpose purpose_from_name(std::string_view name);

// Which side of the factuality pair an extraction call reads from.
enum class ExtractTarget { note, dialogue };

std::string_view extract_target_name(ExtractTarget target);
ExtractTarget extract_target_from_name(std::string_view name);

struct ChatRequest {
    std::string model;
    std::string prompt;  // single user message
    double temperature = 0.7;
    int max_output_tokens = 1024;
};

struct ChatResponse {
    std::string text;
    long prompt_tokens = 0;  // 0 when the backend does not report usage
    long completion_tokens = 0;
    long latency_ms = 0;
};

// Identifies the pipeline call site. Keys mock-script lookups and ledger rows.
struct CallContext {
    std::string note_id;
    Purpose purpose = Purpose::generate;
    std::optional<int> iteration;         // present iff purpose == generate
    std::optional<ExtractTarget> target;  // extract_concepts only
};

struct CallLedgerEntry {
    std::string note_id;
    Purpose purpose = Purpose::generate;
    std::optional<int> iteration;
    long prompt_tokens = 0;
    long completion_tokens = 0;
    std::chrono::system_clock::time_point timestamp;
};

// Append-only record of completed backend calls; appends may come from any
// number of concurrent workers.
class CallLedger {
public:
    void append(CallLedgerEntry entry);
    std::vector<CallLedgerEntry> snapshot() const;
    std::size_t size() const;
    long count(Purpose purpose) const;

private:
    mutable std::mutex mutex_;
    std::vector<CallLedgerEntry> entries_;
};

// Chat-completion backend. complete() issues one call and, on success,
// appends exactly one ledger entry; implementations may retry internally.
class Backend {
public:
    virtual ~Backend() = default;

    ChatResponse complete(const ChatRequest& request, const CallContext& context);

    CallLedger& ledger() { return ledger_; }
    const CallLedger& ledger() const { return ledger_; }

protected:
    virtual ChatResponse send(const ChatRequest& request, const CallContext& context) = 0;

private:
    CallLedger ledger_;
};

// Deterministic scripted backend: the same (note_id, purpose, iteration,
// target) key always yields the same text, regardless of call order or
// concurrency. Missing keys raise BackendUnavailable.
class MockBackend : public Backend {
public:
    struct Entry {
        std::string note_id;
        Purpose purpose = Purpose::generate;
        std::optional<int> iteration;
        std::optional<ExtractTarget> target;
        std::string text;
    };

    MockBackend() = default;
    explicit MockBackend(const std::vector<Entry>& script);

    // Script file: JSON array of {note_id, purpose, iteration?, target?, text}.
    static MockBackend from_script_file(const std::filesystem::path& path);

    void add(Entry entry);

protected:
    ChatResponse send(const ChatRequest& request, const CallContext& context) override;

private:
    std::unordered_map<std::string, std::string> responses_;
};

struct RetryPolicy {
    int max_retries = 3;  // retries after the first attempt
    std::chrono::milliseconds initial_backoff{250};
};

struct HttpConfig {
    std::string base_url;  // e.g. https://api.openai.com or http://localhost:8089/prefix
    std::string api_key;   // empty -> no Authorization header
    RetryPolicy retry;
    std::chrono::seconds timeout{120};
};

// Reads the credential from the environment; empty string when unset.
std::string api_key_from_env(const std::string& variable = "SYNDIAL_API_KEY");

// OpenAI-compatible client: POST {base_url}/v1/chat/completions. Transient
// failures (429, 5xx, transport errors) are retried with exponential backoff;
// 401/403 raise AuthFailure immediately; missing response fields raise
// MalformedResponse.
class HttpBackend : public Backend {
public:
    explicit HttpBackend(HttpConfig config);

protected:
    ChatResponse send(const ChatRequest& request, const CallContext& context) override;

private:
    HttpConfig config_;
    std::string host_;         // scheme://authority
    std::string path_prefix_;  // path portion of base_url, if any
};

// -- prompt templates ---------------------------------------------------------

inline constexpr std::string_view kGenerationInstruction =
    "Given the clinical note, write a conversation between the patient and the "
    "doctor from the clinical notes so that the main keywords are covered.";

inline constexpr std::string_view kConceptExtractionInstruction =
    "List every distinct medical concept mentioned in the following text, one "
    "per line, no commentary.";

// Minimal decimal rendering used for scores and weights inside prompts
// (0.42 -> "0.42", 1 - 0.1 -> "0.9").
std::string format_number(double value);

// First iteration: instruction, note, trailing "Dialogue:" cue. Later
// iterations add the feedback sentence reporting the previous combined score
// and the weights (1 - alpha) and alpha. When history is present the previous
// visit's dialogue is inserted before the cue. The result always ends with
// "Dialogue:" and embeds the note verbatim.
std::string build_generation_prompt(std::string_view note_text,
                                    const std::optional<metrics::ScoreCard>& previous,
                                    double alpha,
                                    const std::optional<std::string>& history = std::nullopt);

std::string build_summarization_prompt(std::string_view note_text, int target_tokens = 300);

std::string build_concept_extraction_prompt(
    std::string_view text, std::string_view instruction = kConceptExtractionInstruction);

// Sends the extraction prompt and splits the response on newlines; blank
// lines are preserved (build_concept_set drops them later).
std::vector<std::string> extract_concepts(Backend& backend, std::string_view text,
                                          const std::string& note_id, ExtractTarget target,
                                          const std::string& model,
                                          std::string_view instruction = kConceptExtractionInstruction);

// Deterministic token estimate: ceil(4/3 * whitespace-word count). Used for
// the input-length gate; pluggable in the sense that callers take the count,
// not the text.
long approx_token_count(std::string_view text);

}  // namespace syndial::llm
