#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace syndial {

enum class Role { patient, doctor, other };

std::string_view role_name(Role role);
Role role_from_name(std::string_view name);

struct Turn {
    Role role = Role::other;
    std::string utterance;
};

// A generated dialogue: the raw backend text plus a parsed turn view.
struct Dialogue {
    std::vector<Turn> turns;
    std::string raw_text;

    // True when at least one turn carries a recognized speaker label.
    bool has_labeled_turns() const;
};

// Splits raw text into speaker turns. A line opening with optional markup,
// a role word (doctor, physician, patient; case-insensitive) and a colon
// starts a new turn; other lines continue the current turn. Text before the
// first label becomes a single `other` turn, as does the whole input when no
// label is found. Total: never fails.
Dialogue parse_dialogue(std::string raw);

// Text used for metric computation: the turn utterances joined with single
// spaces (speaker labels stripped). With include_labels the raw text is used
// unchanged.
std::string metric_text(const Dialogue& dialogue, bool include_labels = false);

}  // namespace syndial
