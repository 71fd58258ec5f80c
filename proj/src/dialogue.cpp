#include "syndial/dialogue.hpp"

#include <regex>
#include <stdexcept>

namespace syndial {

std::string_view role_name(Role role) {
    switch (role) {
        case Role::patient: return "patient";
        case Role::doctor: return "doctor";
        case Role::other: return "other";
    }
    return "other";
}

Role role_from_name(std::string_view name) {
    if (name == "patient") return Role::patient;
    if (name == "doctor") return Role::doctor;
    if (name == "other") return Role::other;
    throw std::invalid_argument("unknown role name: " + std::string(name));
}

bool Dialogue::has_labeled_turns() const {
    for (const auto& turn : turns) {
        if (turn.role != Role::other) {
            return true;
        }
    }
    return false;
}

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

// "**Physician:** Hello" -> role doctor, remainder "Hello".
const std::regex& label_pattern() {
    static const std::regex re(
        R"re(^[\s*_#>\-\["'(]*(doctor|physician|patient)[\s*_\])"'"]*:[*_]*[ \t]*(.*)$)re",
        std::regex::icase);
    return re;
}

Role role_from_label(std::string word) {
    for (auto& c : word) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return word == "patient" ? Role::patient : Role::doctor;
}

}  // namespace

Dialogue parse_dialogue(std::string raw) {
    Dialogue result;
    result.raw_text = std::move(raw);

    std::vector<Turn> turns;
    bool in_turn = false;

    std::size_t pos = 0;
    const std::string& text = result.raw_text;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;

        std::smatch match;
        if (std::regex_match(line, match, label_pattern())) {
            turns.push_back({role_from_label(match[1].str()), trim(match[2].str())});
            in_turn = true;
            continue;
        }
        std::string trimmed = trim(line);
        if (trimmed.empty()) {
            continue;
        }
        if (!in_turn) {
            if (turns.empty() || turns.back().role != Role::other) {
                turns.push_back({Role::other, trimmed});
            } else {
                turns.back().utterance += "\n" + trimmed;
            }
        } else {
            if (turns.back().utterance.empty()) {
                turns.back().utterance = trimmed;
            } else {
                turns.back().utterance += "\n" + trimmed;
            }
        }
    }

    if (turns.empty()) {
        turns.push_back({Role::other, trim(text)});
    }
    result.turns = std::move(turns);
    return result;
}

std::string metric_text(const Dialogue& dialogue, bool include_labels) {
    if (include_labels) {
        return dialogue.raw_text;
    }
    std::string joined;
    for (const auto& turn : dialogue.turns) {
        if (turn.utterance.empty()) {
            continue;
        }
        if (!joined.empty()) {
            joined.push_back(' ');
        }
        joined += turn.utterance;
    }
    return joined;
}

}  // namespace syndial
