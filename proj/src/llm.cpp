#include "syndial/llm.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "syndial/errors.hpp"

namespace syndial::llm {

using nlohmann::json;

std::string_view purpose_name(Purpose purpose) {
    switch (purpose) {
        case Purpose::generate: return "generate";
        case Purpose::summarize: return "summarize";
        case Purpose::extract_concepts: return "extract_concepts";
    }
    return "generate";
}

Purpose purpose_from_name(std::string_view name) {
    if (name == "generate") return Purpose::generate;
    if (name == "summarize") return Purpose::summarize;
    if (name == "extract_concepts") return Purpose::extract_concepts;
    throw std::invalid_argument("unknown purpose: " + std::string(name));
}

std::string_view extract_target_name(ExtractTarget target) {
    return target == ExtractTarget::note ? "note" : "dialogue";
}

ExtractTarget extract_target_from_name(std::string_view name) {
    if (name == "note") return ExtractTarget::note;
    if (name == "dialogue") return ExtractTarget::dialogue;
    throw std::invalid_argument("unknown extraction target: " + std::string(name));
}

void CallLedger::append(CallLedgerEntry entry) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.push_back(std::move(entry));
}

std::vector<CallLedgerEntry> CallLedger::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_;
}

std::size_t CallLedger::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

long CallLedger::count(Purpose purpose) const {
    std::lock_guard<std::mutex> lock(mutex_);
    long n = 0;
    for (const auto& entry : entries_) {
        if (entry.purpose == purpose) {
            ++n;
        }
    }
    return n;
}

ChatResponse Backend::complete(const ChatRequest& request, const CallContext& context) {
    if (request.prompt.empty()) {
        throw std::invalid_argument("chat prompt must be non-empty");
    }
    ChatResponse response = send(request, context);
    CallLedgerEntry entry;
    entry.note_id = context.note_id;
    entry.purpose = context.purpose;
    entry.iteration = context.purpose == Purpose::generate ? context.iteration : std::nullopt;
    entry.prompt_tokens = response.prompt_tokens;
    entry.completion_tokens = response.completion_tokens;
    entry.timestamp = std::chrono::system_clock::now();
    ledger_.append(std::move(entry));
    return response;
}

namespace {

std::string mock_key(std::string_view note_id, Purpose purpose, std::optional<int> iteration,
                     std::optional<ExtractTarget> target) {
    std::string key(note_id);
    key.push_back('\x1f');
    key += purpose_name(purpose);
    key.push_back('\x1f');
    key += iteration ? std::to_string(*iteration) : "-";
    key.push_back('\x1f');
    key += target ? extract_target_name(*target) : std::string_view("-");
    return key;
}

}  // namespace

MockBackend::MockBackend(const std::vector<Entry>& script) {
    for (const auto& entry : script) {
        add(entry);
    }
}

void MockBackend::add(Entry entry) {
    responses_[mock_key(entry.note_id, entry.purpose, entry.iteration, entry.target)] =
        std::move(entry.text);
}

MockBackend MockBackend::from_script_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open mock script: " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError("invalid mock script " + path.string() + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw DataError("mock script must be a JSON array: " + path.string());
    }
    MockBackend backend;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("note_id") || !item.contains("purpose") ||
            !item.contains("text")) {
            throw DataError("mock script entries need note_id, purpose, and text: " +
                            path.string());
        }
        Entry entry;
        entry.note_id = item.at("note_id").get<std::string>();
        entry.purpose = purpose_from_name(item.at("purpose").get<std::string>());
        if (item.contains("iteration") && !item.at("iteration").is_null()) {
            entry.iteration = item.at("iteration").get<int>();
        }
        if (item.contains("target") && !item.at("target").is_null()) {
            entry.target = extract_target_from_name(item.at("target").get<std::string>());
        }
        entry.text = item.at("text").get<std::string>();
        backend.add(std::move(entry));
    }
    return backend;
}

ChatResponse MockBackend::send(const ChatRequest& request, const CallContext& context) {
    const auto key = mock_key(context.note_id, context.purpose, context.iteration, context.target);
    auto it = responses_.find(key);
    if (it == responses_.end()) {
        throw BackendUnavailable("no scripted response for note_id=" + context.note_id +
                                 " purpose=" + std::string(purpose_name(context.purpose)) +
                                 (context.iteration ? " iteration=" + std::to_string(*context.iteration)
                                                    : std::string()));
    }
    ChatResponse response;
    response.text = it->second;
    response.prompt_tokens = approx_token_count(request.prompt);
    response.completion_tokens = approx_token_count(response.text);
    response.latency_ms = 0;
    return response;
}

std::string api_key_from_env(const std::string& variable) {
    const char* value = std::getenv(variable.c_str());
    return value ? std::string(value) : std::string();
}

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {
    // Split scheme://authority from any path prefix.
    const auto& url = config_.base_url;
    auto scheme_end = url.find("://");
    auto path_start = scheme_end == std::string::npos ? url.find('/')
                                                      : url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        host_ = url;
    } else {
        host_ = url.substr(0, path_start);
        path_prefix_ = url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') {
            path_prefix_.pop_back();
        }
    }
}

ChatResponse HttpBackend::send(const ChatRequest& request, const CallContext&) {
    json body = {
        {"model", request.model},
        {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };
    const std::string payload = body.dump();
    const std::string path = path_prefix_ + "/v1/chat/completions";

    std::string last_error;
    for (int attempt = 0; attempt <= config_.retry.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(config_.retry.initial_backoff * (1L << (attempt - 1)));
        }
        httplib::Client client(host_);
        client.set_connection_timeout(config_.timeout);
        client.set_read_timeout(config_.timeout);
        client.set_write_timeout(config_.timeout);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }

        const auto started = std::chrono::steady_clock::now();
        auto result = client.Post(path, headers, payload, "application/json");
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();

        if (!result) {
            last_error = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        const int status = result->status;
        if (status == 401 || status == 403) {
            throw AuthFailure("authentication failed (HTTP " + std::to_string(status) + ")");
        }
        if (status == 429 || status >= 500) {
            last_error = "HTTP " + std::to_string(status);
            continue;
        }
        if (status < 200 || status >= 300) {
            throw BackendUnavailable("HTTP " + std::to_string(status) + ": " + result->body);
        }

        json doc;
        try {
            doc = json::parse(result->body);
        } catch (const json::exception& e) {
            throw MalformedResponse(std::string("response is not valid JSON: ") + e.what());
        }
        if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty() ||
            !doc["choices"][0].contains("message") ||
            !doc["choices"][0]["message"].contains("content")) {
            throw MalformedResponse("response missing choices[0].message.content");
        }
        ChatResponse response;
        response.text = doc["choices"][0]["message"]["content"].get<std::string>();
        if (doc.contains("usage") && doc["usage"].is_object()) {
            response.prompt_tokens = doc["usage"].value("prompt_tokens", 0L);
            response.completion_tokens = doc["usage"].value("completion_tokens", 0L);
        }
        response.latency_ms = elapsed;
        return response;
    }
    throw BackendUnavailable("backend unavailable after " +
                             std::to_string(config_.retry.max_retries + 1) + " attempts (" +
                             last_error + ")");
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

std::string build_generation_prompt(std::string_view note_text,
                                    const std::optional<metrics::ScoreCard>& previous,
                                    double alpha,
                                    const std::optional<std::string>& history) {
    std::string prompt(kGenerationInstruction);
    prompt += "\n\n";
    if (previous.has_value()) {
        prompt += "the combined rouge score for both extractiveness and similarity for the "
                  "previous dialog was ";
        prompt += format_number(previous->combined);
        prompt += " for this note ";
        prompt += note_text;
        prompt += "generate a new one and try to improve the accuracy where the extractiveness "
                  "should weigh";
        prompt += format_number(1.0 - alpha);
        prompt += "and the similarity should weigh";
        prompt += format_number(alpha);
    } else {
        prompt += note_text;
    }
    if (history.has_value()) {
        prompt += "\n\nPrevious visit's dialogue:\n";
        prompt += *history;
    }
    prompt += "\n\nDialogue:";
    return prompt;
}

std::string build_summarization_prompt(std::string_view note_text, int target_tokens) {
    std::string prompt = "Summarize the following clinical note in under " +
                         std::to_string(target_tokens) +
                         " tokens. Preserve all diagnoses, medications, and key findings.\n\n";
    prompt += note_text;
    prompt += "\n\nSummary:";
    return prompt;
}

std::string build_concept_extraction_prompt(std::string_view text, std::string_view instruction) {
    std::string prompt(instruction);
    prompt += "\n\n";
    prompt += text;
    return prompt;
}

std::vector<std::string> extract_concepts(Backend& backend, std::string_view text,
                                          const std::string& note_id, ExtractTarget target,
                                          const std::string& model,
                                          std::string_view instruction) {
    ChatRequest request;
    request.model = model;
    request.prompt = build_concept_extraction_prompt(text, instruction);
    request.temperature = 0.0;
    CallContext context{note_id, Purpose::extract_concepts, std::nullopt, target};
    const ChatResponse response = backend.complete(request, context);

    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= response.text.size()) {
        auto eol = response.text.find('\n', pos);
        if (eol == std::string::npos) {
            if (pos < response.text.size()) {
                lines.push_back(response.text.substr(pos));
            }
            break;
        }
        lines.push_back(response.text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

long approx_token_count(std::string_view text) {
    long words = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return (4 * words + 2) / 3;
}

}  // namespace syndial::llm
