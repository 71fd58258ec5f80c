#include "syndial/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "syndial/errors.hpp"

namespace syndial::corpus {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Enforces the cross-field invariants shared by both loaders.
void validate_note(const ClinicalNote& note, std::size_t row,
                   std::unordered_set<std::string>& seen_ids) {
    if (note.id.empty()) {
        throw DataError("empty note id at row " + std::to_string(row));
    }
    if (!seen_ids.insert(note.id).second) {
        throw DuplicateId(note.id, row);
    }
    if (note.text.empty()) {
        throw EmptyNote(row);
    }
    if (note.patient_id.has_value() != note.visit_seq.has_value()) {
        throw DataError("row " + std::to_string(row) +
                        ": patient_id and visit_seq must be present together");
    }
    if (note.visit_seq && *note.visit_seq < 1) {
        throw DataError("row " + std::to_string(row) + ": visit_seq must be >= 1");
    }
}

void finalize(Corpus& corpus) {
    corpus.has_references = true;
    for (const auto& note : corpus.notes) {
        if (!note.reference_dialogue.has_value()) {
            corpus.has_references = false;
            break;
        }
    }
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    std::size_t quote_open_line = 0;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    in_quotes = true;
                    field_started = true;
                    quote_open_line = line;
                } else {
                    field.push_back(c);
                }
                break;
            case ',':
                end_field();
                break;
            case '\r':
                // swallowed; CRLF handled at '\n'
                break;
            case '\n':
                end_record();
                ++line;
                break;
            default:
                field_started = true;
                field.push_back(c);
                break;
        }
    }
    if (in_quotes) {
        throw DataError("unterminated quoted field starting at line " +
                        std::to_string(quote_open_line));
    }
    if (!field.empty() || !record.empty()) {
        end_record();
    }
    return records;
}

Corpus load_csv(const std::filesystem::path& path, const CsvColumnMap& columns) {
    const auto records = parse_csv(slurp(path));
    if (records.empty()) {
        throw DataError("CSV has no header row: " + path.string());
    }
    const auto& header = records.front();

    auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    };
    auto require_column = [&](const std::string& name) {
        auto idx = find_column(name);
        if (!idx) {
            throw MissingColumn("missing required column \"" + name + "\" in " + path.string());
        }
        return *idx;
    };

    const std::size_t id_col = require_column(columns.id);
    const std::size_t note_col = require_column(columns.note);
    const auto dialogue_col = find_column(columns.dialogue);
    const auto patient_col = find_column(columns.patient);
    const auto visit_col = find_column(columns.visit);

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        const std::size_t row_number = r + 1;  // header is row 1
        if (row.size() == 1 && row[0].empty()) {
            continue;  // blank line
        }
        if (row.size() != header.size()) {
            throw DataError("row " + std::to_string(row_number) + " has " +
                            std::to_string(row.size()) + " fields, header has " +
                            std::to_string(header.size()));
        }
        ClinicalNote note;
        note.id = row[id_col];
        note.text = row[note_col];
        if (dialogue_col && !row[*dialogue_col].empty()) {
            note.reference_dialogue = row[*dialogue_col];
        }
        if (patient_col && !row[*patient_col].empty()) {
            note.patient_id = row[*patient_col];
        }
        if (visit_col && !row[*visit_col].empty()) {
            try {
                std::size_t consumed = 0;
                note.visit_seq = std::stoi(row[*visit_col], &consumed);
                if (consumed != row[*visit_col].size()) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception&) {
                throw DataError("row " + std::to_string(row_number) +
                                ": visit_seq is not an integer: " + row[*visit_col]);
            }
        }
        validate_note(note, row_number, seen_ids);
        corpus.notes.push_back(std::move(note));
    }
    finalize(corpus);
    return corpus;
}

Corpus load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open file: " + path.string());
    }
    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            throw MalformedLine(line_number, e.what());
        }
        if (!doc.is_object()) {
            throw MalformedLine(line_number, "expected a JSON object");
        }
        if (!doc.contains("id") || !doc["id"].is_string()) {
            throw MalformedLine(line_number, "missing string field \"id\"");
        }
        if (!doc.contains("text") || !doc["text"].is_string()) {
            throw MalformedLine(line_number, "missing string field \"text\"");
        }
        ClinicalNote note;
        note.id = doc["id"].get<std::string>();
        note.text = doc["text"].get<std::string>();
        if (doc.contains("patient_id") && !doc["patient_id"].is_null()) {
            note.patient_id = doc["patient_id"].get<std::string>();
        }
        if (doc.contains("visit_seq") && !doc["visit_seq"].is_null()) {
            note.visit_seq = doc["visit_seq"].get<int>();
        }
        if (doc.contains("reference_dialogue") && !doc["reference_dialogue"].is_null()) {
            note.reference_dialogue = doc["reference_dialogue"].get<std::string>();
        }
        validate_note(note, line_number, seen_ids);
        corpus.notes.push_back(std::move(note));
    }
    finalize(corpus);
    return corpus;
}

}  // namespace syndial::corpus
