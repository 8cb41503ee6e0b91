#include "kgconv/lexicon.hpp"

namespace kgconv::lexicon {

namespace {

using WordSet = std::set<std::string, std::less<>>;

const WordSet& auxiliaries() {
  static const WordSet words{"is",   "are",   "am",    "was",    "were",  "be",    "been",
                             "being", "has",  "have",  "had",    "do",    "does",  "did",
                             "can",  "could", "will",  "would",  "shall", "should", "may",
                             "might", "must"};
  return words;
}

const WordSet& prepositions() {
  static const WordSet words{
      "about",   "above",  "across",     "after",   "against", "along",  "among",   "around",
      "as",      "at",     "before",     "behind",  "below",   "beneath", "beside", "between",
      "beyond",  "by",     "concerning", "despite", "during",  "except", "for",     "from",
      "in",      "inside", "into",       "like",    "near",    "of",     "off",     "on",
      "onto",    "out",    "outside",    "over",    "past",    "per",    "regarding", "since",
      "through", "throughout", "to",     "toward",  "towards", "under",  "until",   "up",
      "upon",    "via",    "with",       "within",  "without"};
  return words;
}

const WordSet& conjunctions() {
  static const WordSet words{"and",  "or",      "but",   "nor",     "that", "than",
                             "because", "although", "while", "whereas", "if", "whether"};
  return words;
}

const WordSet& verbs() {
  static const WordSet words{
      "found",     "discovered", "wrote",    "made",     "created",  "founded",  "invented",
      "directed",  "produced",   "designed", "built",    "named",    "married",  "won",
      "follow",    "follows",    "followed", "visited",  "played",   "painted",  "composed",
      "published", "developed",  "replaced", "succeeded", "influenced", "defeated", "named",
      "describe",  "describes",  "described", "call",    "calls",    "called",   "find",
      "finds",     "discover",   "discovers", "create",  "creates",  "found",    "founds",
      "marry",     "marries",    "influence", "influences", "replace", "replaces", "succeed",
      "succeeds",  "defeat",     "defeats",  "visit",    "visits",   "play",     "plays",
      "own",       "owns",       "owned",    "lead",     "leads",    "led",      "hold",
      "holds",     "held",       "orbit",    "orbits",   "orbited",  "border",   "borders",
      "bordered",  "govern",     "governs",  "governed", "represent", "represents",
      "represented", "associate", "associates", "associated", "outline", "outlines",
      "outlined",  "know",       "knows",    "knew",     "see",      "sees",     "saw"};
  return words;
}

}  // namespace

bool is_auxiliary(std::string_view w) { return auxiliaries().count(w) != 0; }
bool is_preposition(std::string_view w) { return prepositions().count(w) != 0; }
bool is_conjunction(std::string_view w) { return conjunctions().count(w) != 0; }
bool is_article(std::string_view w) { return w == "the" || w == "a" || w == "an"; }

bool is_lexical_verb(std::string_view w) {
  if (is_auxiliary(w)) return false;
  if (verbs().count(w) || present_to_past().count(w) || is_past_form(w)) return true;
  return w.size() > 4 && w.ends_with("ed");
}

const std::map<std::string, std::string, std::less<>>& present_to_past() {
  static const std::map<std::string, std::string, std::less<>> table{
      {"is", "was"},           {"are", "were"},         {"am", "was"},
      {"has", "had"},          {"have", "had"},         {"does", "did"},
      {"do", "did"},           {"belongs", "belonged"}, {"borders", "bordered"},
      {"contains", "contained"}, {"covers", "covered"}, {"designs", "designed"},
      {"directs", "directed"}, {"flows", "flowed"},     {"governs", "governed"},
      {"holds", "held"},       {"hosts", "hosted"},     {"includes", "included"},
      {"leads", "led"},        {"lives", "lived"},      {"makes", "made"},
      {"manufactures", "manufactured"}, {"means", "meant"}, {"occupies", "occupied"},
      {"orbits", "orbited"},   {"owns", "owned"},       {"plays", "played"},
      {"practices", "practiced"}, {"produces", "produced"}, {"publishes", "published"},
      {"represents", "represented"}, {"runs", "ran"},   {"shares", "shared"},
      {"speaks", "spoke"},     {"studies", "studied"},  {"teaches", "taught"},
      {"uses", "used"},        {"works", "worked"},     {"writes", "wrote"}};
  return table;
}

bool is_past_form(std::string_view w) {
  static const WordSet past = [] {
    WordSet s{"was", "were", "had", "did", "found", "discovered", "founded", "invented", "created",
              "wrote", "built", "won", "married", "died", "born"};
    for (const auto& [present, past_form] : present_to_past()) s.insert(past_form);
    return s;
  }();
  return past.count(w) != 0;
}

}  // namespace kgconv::lexicon
