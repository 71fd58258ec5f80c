#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace syndial::corpus {

struct ClinicalNote {
    std::string id;
    std::optional<std::string> patient_id;
    std::optional<int> visit_seq;  // present iff patient_id is present
    std::string text;
    std::optional<std::string> reference_dialogue;
};

struct Corpus {
    std::vector<ClinicalNote> notes;
    // True iff every note carries a reference dialogue (vacuously true when
    // the corpus is empty).
    bool has_references = true;

    bool empty() const { return notes.empty(); }
    std::size_t size() const { return notes.size(); }
};

// Column names used by load_csv. Defaults match the MTS-Dialogue header;
// id and note are required, the rest are picked up when present.
struct CsvColumnMap {
    std::string id = "ID";
    std::string note = "section_text";
    std::string dialogue = "dialogue";
    std::string patient = "patient_id";
    std::string visit = "visit_seq";
};

// RFC-4180 CSV (UTF-8, header row required). One ClinicalNote per row.
// Rejects rows with empty note text, duplicate ids, and mapped-but-missing
// required columns; row numbers count the header as row 1.
Corpus load_csv(const std::filesystem::path& path, const CsvColumnMap& columns = {});

// JSONL, one object per line with at least {id, text}; optional patient_id,
// visit_seq, reference_dialogue. Same validations as load_csv.
Corpus load_jsonl(const std::filesystem::path& path);

// Parses RFC-4180 content into records (quoted fields, "" escapes, CRLF/LF,
// embedded newlines inside quotes). Throws DataError on unbalanced quotes.
std::vector<std::vector<std::string>> parse_csv(const std::string& content);

}  // namespace syndial::corpus
