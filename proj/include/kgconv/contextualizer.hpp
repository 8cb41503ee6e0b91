#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgconv/kg_store.hpp"
#include "kgconv/sequence_sampler.hpp"
#include "kgconv/template_engine.hpp"

namespace kgconv {

// Byte range of a subject mention inside a question.
struct Mention {
  std::size_t pos = 0;
  std::size_t len = 0;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// Per-conversation record of how each entity has been referred to so far.
class MentionState {
 public:
  struct Record {
    std::string first_reference;
    std::vector<std::string> prior_mentions;
  };

  bool mentioned(const EntityId& id) const { return records_.count(id) != 0; }
  const Record* find(const EntityId& id) const;
  // The first call for an entity fixes its first reference.
  void note(const EntityId& id, const std::string& label);
  const std::map<EntityId, Record>& records() const { return records_; }

  // Later mentions that are not substrings of the first reference.
  std::vector<std::string> violations() const;

 private:
  std::map<EntityId, Record> records_;
};

// Labels allowed for a first mention: those containing the preferred label.
std::vector<std::string> first_reference_candidates(const Entity& entity);
// Labels allowed after first_reference: labels (plus the surname of a
// person) that are substrings of it. Never empty for a valid first reference.
std::vector<std::string> later_reference_candidates(const Entity& entity,
                                                    const std::string& first_reference);

// Uniform choice among the allowed labels; records the mention in state.
std::string select_reference(const Entity& entity, MentionState& state, Rng& rng);

// ---------------------------------------------------------------------------
// Determiners

inline constexpr std::string_view kMaskToken = "[MASK]";

enum class Determiner { kInsertThe, kNoArticle };

// Scores "the" at a mask token placed right before a label.
class DeterminerOracle {
 public:
  explicit DeterminerOracle(double threshold = 0.92);
  virtual ~DeterminerOracle() = default;

  double threshold() const { return threshold_; }
  virtual double probability_of_the(std::string_view masked_text, std::string_view label) const = 0;

 private:
  double threshold_;
};

// Offline oracle: probability 1 for labels matching a pattern, 0 otherwise.
class LexiconDeterminer : public DeterminerOracle {
 public:
  struct Patterns {
    std::vector<std::string> prefixes;  // leading words, e.g. "United "
    std::vector<std::string> suffixes;  // trailing words, e.g. " Islands"
    std::vector<std::string> exact;
  };

  static Patterns default_patterns();

  explicit LexiconDeterminer(Patterns patterns = default_patterns(), double threshold = 0.92);

  double probability_of_the(std::string_view masked_text, std::string_view label) const override;

 private:
  Patterns patterns_;
};

// Masked-LM service client. POSTs {"text","candidates":["the"]} and reads
// {"probabilities":{"the":p}}.
class HttpDeterminerOracle : public DeterminerOracle {
 public:
  explicit HttpDeterminerOracle(std::string url, double threshold = 0.92,
                                std::size_t max_in_flight = 4);
  ~HttpDeterminerOracle() override;

  double probability_of_the(std::string_view masked_text, std::string_view label) const override;

 private:
  struct Impl;
  std::string url_;
  std::unique_ptr<Impl> impl_;
};

// Uses primary; switches to fallback for good once primary is unreachable.
class FailoverDeterminer : public DeterminerOracle {
 public:
  FailoverDeterminer(std::unique_ptr<DeterminerOracle> primary,
                     std::unique_ptr<DeterminerOracle> fallback);

  double probability_of_the(std::string_view masked_text, std::string_view label) const override;

 private:
  std::unique_ptr<DeterminerOracle> primary_;
  std::unique_ptr<DeterminerOracle> fallback_;
  mutable std::atomic<bool> primary_down_{false};
};

// insert_the iff the oracle gives "the" at least the threshold before the
// first whole-word occurrence of label. A label already preceded by an
// article is left alone. Throws std::invalid_argument when label is absent.
Determiner decide_determiner(std::string_view label, std::string_view sentence_context,
                             const DeterminerOracle& oracle);

// ---------------------------------------------------------------------------
// Tense

// The triple has an end_time qualifier, or its subject or object is dead.
bool past_tense_trigger(const Triple& triple, const KnowledgeGraph& graph);

// Puts the first finite verb of a present-tense question into the past when
// the trigger holds. Words inside `protect` are never touched. Idempotent.
std::string apply_tense(std::string_view question, Tense template_tense, const Triple& triple,
                        const KnowledgeGraph& graph, std::optional<Mention> protect = std::nullopt);

// ---------------------------------------------------------------------------
// Pronouns

// Neutral unless the entity is a human or fictional character; then its
// recorded male/female gender, else unknown.
Gender infer_gender(const Entity& entity);
// Literals are neutral.
Gender infer_gender(const Node& node, const KnowledgeGraph& graph);

// Pronoun replacement rules, without the gate:
//  (a) mention after "a"/"of": nothing;
//  (b) mention followed by a possessive marker: his/her/its;
//  (c) after a preposition or conjunction other than of/that, or after a
//      lexical verb: him/her/it;
//  (d) otherwise he/she/it.
// `mention` may include a leading determiner. On success, *replaced receives
// the pronoun's range in the result.
std::optional<std::string> replace_with_pronoun(std::string_view question, Mention mention,
                                                Gender gender, Mention* replaced = nullptr);

// Gate + rules. A pronoun is used only if the subject occurs in prev and its
// gender is known and differs from the gender of the other entity of prev.
std::optional<std::string> pronominalize(std::string_view question, Mention mention,
                                         const Triple& triple, const Triple* prev,
                                         const KnowledgeGraph& graph, Mention* replaced = nullptr);

// ---------------------------------------------------------------------------
// The full IC pass for one paraphrase.

struct ContextualizedQuestion {
  std::string ooc;
  std::optional<std::string> ic;  // absent when no pass changed the OOC text
  // Subject mention inside ic (or ooc when ic is absent).
  Mention mention;
};

class Contextualizer {
 public:
  Contextualizer(const KnowledgeGraph& graph, const DeterminerOracle& determiner)
      : graph_(graph), determiner_(determiner) {}

  // Referring expression, determiner, tense and pronoun passes, in order.
  // `reference` is the label chosen by select_reference for this turn.
  ContextualizedQuestion contextualize(const Template& tpl, const Triple& triple,
                                       const Triple* prev, const std::string& reference) const;

 private:
  const KnowledgeGraph& graph_;
  const DeterminerOracle& determiner_;
};

}  // namespace kgconv
