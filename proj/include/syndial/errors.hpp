#pragma once

#include <stdexcept>
#include <string>

namespace syndial {

// Base class for all recoverable syndial errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- metric errors -----------------------------------------------------------

// Similarity was requested for a note that has no reference dialogue.
struct MissingReference : Error {
    using Error::Error;
};

// Self-BLEU needs at least two texts.
struct TooFewTexts : Error {
    using Error::Error;
};

// Concept recall is undefined when the note-side concept set is empty;
// callers report a missing value instead of a zero score.
struct EmptyConceptList : Error {
    using Error::Error;
};

// -- backend errors ----------------------------------------------------------

struct BackendError : Error {
    using Error::Error;
};

// Transport failure that persisted through the retry budget.
struct BackendUnavailable : BackendError {
    using BackendError::BackendError;
};

// HTTP 401/403; never retried.
struct AuthFailure : BackendError {
    using BackendError::BackendError;
};

// Response arrived but the expected fields were missing or unparseable.
struct MalformedResponse : BackendError {
    using BackendError::BackendError;
};

// -- data validation errors --------------------------------------------------

struct DataError : Error {
    using Error::Error;
};

struct MissingColumn : DataError {
    using DataError::DataError;
};

struct EmptyNote : DataError {
    explicit EmptyNote(std::size_t row)
        : DataError("empty note text at row " + std::to_string(row)), row(row) {}
    std::size_t row;
};

struct DuplicateId : DataError {
    DuplicateId(const std::string& id, std::size_t row)
        : DataError("duplicate note id \"" + id + "\" at row " + std::to_string(row)), row(row) {}
    std::size_t row;
};

struct MalformedLine : DataError {
    MalformedLine(std::size_t line, const std::string& why)
        : DataError("malformed line " + std::to_string(line) + ": " + why), line(line) {}
    std::size_t line;
};

}  // namespace syndial
