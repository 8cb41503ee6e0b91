#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

// Closed-class English word lists used instead of a part-of-speech tagger.
// All entries are lowercase.
namespace kgconv::lexicon {

bool is_auxiliary(std::string_view w);
bool is_preposition(std::string_view w);
bool is_conjunction(std::string_view w);
bool is_article(std::string_view w);

// Lexical (non-auxiliary) verb forms that can directly precede an object
// noun phrase: a list of common forms plus regular "-ed" past forms.
bool is_lexical_verb(std::string_view w);

// Present-tense auxiliaries and finite verbs mapped to their past forms.
const std::map<std::string, std::string, std::less<>>& present_to_past();
bool is_past_form(std::string_view w);

}  // namespace kgconv::lexicon
