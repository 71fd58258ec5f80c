#include "syndial/text.hpp"

#include <cctype>
#include <stdexcept>

namespace syndial::text {

TokenSeq tokenize(std::string_view input) {
    TokenSeq out;
    std::string current;
    for (unsigned char c : input) {
        // Bytes >= 0x80 belong to multi-byte UTF-8 sequences and are kept
        // inside tokens; only ASCII non-alphanumerics split.
        const bool in_token = c >= 0x80 || std::isalnum(c) != 0;
        if (in_token) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        out.push_back(std::move(current));
    }
    return out;
}

std::string join(const TokenSeq& tokens) {
    std::string out;
    for (const auto& tok : tokens) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += tok;
    }
    return out;
}

long NGramCounts::total() const {
    long sum = 0;
    for (const auto& [gram, count] : counts) {
        sum += count;
    }
    return sum;
}

NGramCounts ngrams(const TokenSeq& tokens, int order) {
    if (order < 1) {
        throw std::invalid_argument("n-gram order must be >= 1");
    }
    NGramCounts result;
    result.order = order;
    if (tokens.size() < static_cast<std::size_t>(order)) {
        return result;
    }
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < order; ++k) {
            key.push_back(' ');
            key += tokens[i + k];
        }
        ++result.counts[key];
    }
    return result;
}

namespace {

// Working buffer for one word being stemmed. Implements the letter
// classification and measure arithmetic of the published algorithm:
// a word has the form [C](VC)^m[V] and m is what the rule conditions test.
class Stemmer {
public:
    explicit Stemmer(std::string word) : w_(std::move(word)) {}

    std::string run() {
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return w_;
    }

private:
    std::string w_;

    bool is_consonant(std::size_t i) const {
        switch (w_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                // y after a consonant acts as a vowel; leading y is a consonant
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // m of the prefix w_[0..len): the number of vowel-to-consonant
    // transitions in the consonant/vowel sequence.
    int measure(std::size_t len) const {
        int m = 0;
        bool prev_vowel = false;
        for (std::size_t i = 0; i < len; ++i) {
            const bool vowel = !is_consonant(i);
            if (prev_vowel && !vowel) {
                ++m;
            }
            prev_vowel = vowel;
        }
        return m;
    }

    bool contains_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i) {
            if (!is_consonant(i)) {
                return true;
            }
        }
        return false;
    }

    // *d: prefix ends in a double consonant.
    bool ends_double_consonant(std::size_t len) const {
        return len >= 2 && w_[len - 1] == w_[len - 2] && is_consonant(len - 1);
    }

    // *o: prefix ends consonant-vowel-consonant where the final consonant
    // is not w, x, or y.
    bool ends_cvc(std::size_t len) const {
        if (len < 3) {
            return false;
        }
        const char last = w_[len - 1];
        return is_consonant(len - 3) && !is_consonant(len - 2) &&
               is_consonant(len - 1) && last != 'w' && last != 'x' && last != 'y';
    }

    bool ends(std::string_view suffix) const {
        return w_.size() >= suffix.size() &&
               std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
    }

    std::size_t stem_len(std::string_view suffix) const {
        return w_.size() - suffix.size();
    }

    // Replaces `suffix` with `replacement` when m(stem) > threshold.
    // Returns true when the suffix matched, whether or not the rule fired;
    // within one step only the first (longest) matching suffix is considered.
    bool replace_if(std::string_view suffix, std::string_view replacement, int threshold) {
        if (!ends(suffix)) {
            return false;
        }
        const std::size_t stem = stem_len(suffix);
        if (measure(stem) > threshold) {
            w_.resize(stem);
            w_ += replacement;
        }
        return true;
    }

    void step1a() {
        if (ends("sses")) {
            w_.resize(w_.size() - 2);
        } else if (ends("ies")) {
            w_.resize(w_.size() - 2);
        } else if (ends("ss")) {
            // keep
        } else if (ends("s")) {
            w_.resize(w_.size() - 1);
        }
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(stem_len("eed")) > 0) {
                w_.resize(w_.size() - 1);
            }
            return;
        }
        std::size_t stem = 0;
        if (ends("ed") && contains_vowel(stem_len("ed"))) {
            stem = stem_len("ed");
        } else if (ends("ing") && contains_vowel(stem_len("ing"))) {
            stem = stem_len("ing");
        } else {
            return;
        }
        w_.resize(stem);
        if (ends("at") || ends("bl") || ends("iz")) {
            w_.push_back('e');
        } else if (ends_double_consonant(w_.size())) {
            const char last = w_.back();
            if (last != 'l' && last != 's' && last != 'z') {
                w_.pop_back();
            }
        } else if (measure(w_.size()) == 1 && ends_cvc(w_.size())) {
            w_.push_back('e');
        }
    }

    void step1c() {
        if (ends("y") && contains_vowel(w_.size() - 1)) {
            w_.back() = 'i';
        }
    }

    void step2() {
        static constexpr std::pair<std::string_view, std::string_view> rules[] = {
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
            {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
            {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
            {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
            {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
            {"iviti", "ive"},   {"biliti", "ble"},
        };
        for (const auto& [suffix, replacement] : rules) {
            if (replace_if(suffix, replacement, 0)) {
                return;
            }
        }
    }

    void step3() {
        static constexpr std::pair<std::string_view, std::string_view> rules[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        };
        for (const auto& [suffix, replacement] : rules) {
            if (replace_if(suffix, replacement, 0)) {
                return;
            }
        }
    }

    void step4() {
        static constexpr std::string_view suffixes[] = {
            "al",  "ance", "ence", "er",  "ic",  "able", "ible",
            "ant", "ement", "ment", "ent", "ion", "ou",   "ism",
            "ate", "iti",  "ous",  "ive", "ize",
        };
        for (const auto suffix : suffixes) {
            if (!ends(suffix)) {
                continue;
            }
            const std::size_t stem = stem_len(suffix);
            // -ion drops only after s or t
            if (suffix == "ion" && (stem == 0 || (w_[stem - 1] != 's' && w_[stem - 1] != 't'))) {
                return;
            }
            if (measure(stem) > 1) {
                w_.resize(stem);
            }
            return;
        }
    }

    void step5a() {
        if (!ends("e")) {
            return;
        }
        const std::size_t stem = w_.size() - 1;
        const int m = measure(stem);
        if (m > 1 || (m == 1 && !ends_cvc(stem))) {
            w_.pop_back();
        }
    }

    void step5b() {
        if (w_.size() >= 2 && w_.back() == 'l' && ends_double_consonant(w_.size()) &&
            measure(w_.size()) > 1) {
            w_.pop_back();
        }
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    std::string lowered;
    lowered.reserve(word.size());
    for (unsigned char c : word) {
        lowered.push_back(static_cast<char>(std::tolower(c)));
    }
    if (lowered.size() < 3) {
        return lowered;
    }
    return Stemmer(std::move(lowered)).run();
}

}  // namespace syndial::text
