#pragma once

#include <string>
#include <string_view>

namespace planscript {

enum class WordClass { Noun, Other };

// Word-class oracle for LOC object names. Implementations must be
// thread-safe for concurrent reads.
class Lexicon {
public:
    virtual ~Lexicon() = default;
    virtual WordClass word_class(std::string_view word) const = 0;
};

// Bundled lexicon: a packaged list of common object nouns, falling back to
// "unknown words ending in -ing/-ed/-ly are not nouns, other unknown words
// are nouns". Known plural forms resolve through their singular.
class BundledLexicon : public Lexicon {
public:
    WordClass word_class(std::string_view word) const override;
    bool known_noun(std::string_view word) const;
};

const Lexicon& default_lexicon();

// English pluralization: irregulars map, then -ies/-es/-s rules.
std::string pluralize(std::string_view word);

// Best-effort inverse of pluralize; returns empty when `word` has no
// plausible singular form.
std::string singular_of(std::string_view word);

// True when the word is an irregular plural or ends in s with a known
// noun stem whose plural round-trips back to the word.
bool is_plural_noun(std::string_view word, const BundledLexicon& lex);

std::string to_lower(std::string_view s);

}  // namespace planscript
