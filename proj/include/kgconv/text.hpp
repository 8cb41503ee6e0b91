#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// ASCII text helpers shared by the template, contextualization, rewriting
// and evaluation code. Non-ASCII bytes are treated as word characters.
namespace kgconv::text {

std::string lower(std::string_view s);
std::string trim(std::string_view s);

bool is_word_char(char c);

// Maximal runs of word characters (letters, digits, apostrophes, hyphens,
// non-ASCII bytes).
std::vector<std::string> words(std::string_view s);

// Lowercased tokens; punctuation marks become tokens of their own and a
// trailing possessive "'s" is split off ("france's" -> "france", "'s").
std::vector<std::string> tokenize(std::string_view s);

bool is_punctuation_token(std::string_view token);

// First occurrence of needle at or after from that starts and ends on word
// boundaries, or npos.
std::size_t find_word(std::string_view haystack, std::string_view needle, std::size_t from = 0);

std::string capitalize_first(std::string_view s);
bool starts_upper(std::string_view s);

// The word immediately before pos (skipping spaces), or empty.
std::string word_before(std::string_view s, std::size_t pos);
// Start offset of that word, or npos.
std::size_t word_before_pos(std::string_view s, std::size_t pos);

}  // namespace kgconv::text
