#include "planscript/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace planscript {

namespace {

const std::unordered_map<std::string, std::string>& irregular_plurals() {
    static const std::unordered_map<std::string, std::string> map = {
        {"person", "people"}, {"child", "children"}, {"man", "men"},
        {"woman", "women"},   {"foot", "feet"},      {"mouse", "mice"},
        {"goose", "geese"},   {"leaf", "leaves"},
    };
    return map;
}

const std::unordered_map<std::string, std::string>& irregular_singulars() {
    static const std::unordered_map<std::string, std::string> map = [] {
        std::unordered_map<std::string, std::string> inv;
        for (const auto& [sg, pl] : irregular_plurals()) inv[pl] = sg;
        return inv;
    }();
    return map;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

namespace detail {
extern const char* const kNounWords[];
extern const size_t kNounWordCount;
}  // namespace detail

namespace {

const std::unordered_set<std::string>& noun_set() {
    static const std::unordered_set<std::string> set = [] {
        std::unordered_set<std::string> s;
        s.reserve(detail::kNounWordCount * 2);
        for (size_t i = 0; i < detail::kNounWordCount; ++i) s.insert(detail::kNounWords[i]);
        return s;
    }();
    return set;
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string pluralize(std::string_view word) {
    std::string w = to_lower(word);
    if (auto it = irregular_plurals().find(w); it != irregular_plurals().end())
        return it->second;
    if (w.empty()) return w;
    if (ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") ||
        ends_with(w, "ch") || ends_with(w, "sh"))
        return w + "es";
    if (w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]))
        return w.substr(0, w.size() - 1) + "ies";
    return w + "s";
}

std::string singular_of(std::string_view word) {
    std::string w = to_lower(word);
    if (auto it = irregular_singulars().find(w); it != irregular_singulars().end())
        return it->second;
    if (ends_with(w, "ies") && w.size() > 3)
        return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "es") && w.size() > 2) {
        std::string stem = w.substr(0, w.size() - 2);
        if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
            ends_with(stem, "ch") || ends_with(stem, "sh"))
            return stem;
    }
    if (ends_with(w, "s") && w.size() > 1 && !ends_with(w, "ss"))
        return w.substr(0, w.size() - 1);
    return {};
}

WordClass BundledLexicon::word_class(std::string_view word) const {
    std::string w = to_lower(word);
    if (w.empty()) return WordClass::Other;
    if (known_noun(w)) return WordClass::Noun;
    if (ends_with(w, "ing") || ends_with(w, "ed") || ends_with(w, "ly"))
        return WordClass::Other;
    return WordClass::Noun;  // permissive default for rare object names
}

bool BundledLexicon::known_noun(std::string_view word) const {
    std::string w = to_lower(word);
    if (noun_set().count(w)) return true;
    std::string sg = singular_of(w);
    return !sg.empty() && noun_set().count(sg);
}

const Lexicon& default_lexicon() {
    static const BundledLexicon lex;
    return lex;
}

bool is_plural_noun(std::string_view word, const BundledLexicon& lex) {
    std::string w = to_lower(word);
    if (auto it = irregular_singulars().find(w); it != irregular_singulars().end())
        return true;
    if (!ends_with(w, "s")) return false;
    std::string sg = singular_of(w);
    return !sg.empty() && lex.known_noun(sg) && pluralize(sg) == w;
}

}  // namespace planscript
