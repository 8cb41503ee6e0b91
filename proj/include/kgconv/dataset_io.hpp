#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kgconv/contextualizer.hpp"
#include "kgconv/jsonl.hpp"
#include "kgconv/kg_store.hpp"
#include "kgconv/sequence_sampler.hpp"

namespace kgconv {

inline constexpr std::size_t kMaxParaphrases = 10;

struct EntityRef {
  std::string qid;
  std::string label;

  friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

struct PropertyRef {
  std::string pid;
  std::string label;
  bool inverse = false;

  friend bool operator==(const PropertyRef&, const PropertyRef&) = default;
};

// Exactly one of qid and literal is set.
struct ObjectRef {
  std::optional<std::string> qid;
  std::optional<std::string> literal;
  std::string label;

  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};

// A triple as written in the dataset: ids plus display labels.
struct TurnTriple {
  EntityRef s;
  PropertyRef p;
  ObjectRef o;

  friend bool operator==(const TurnTriple&, const TurnTriple&) = default;
};

TurnTriple describe(const Triple& triple, const KnowledgeGraph& graph);
// The graph triple a TurnTriple names. Throws UnknownEntityError or
// Error("unknown_triple").
Triple resolve(const TurnTriple& triple, const KnowledgeGraph& graph);

struct QuestionVariantSet {
  std::string ooc;
  std::optional<std::string> ic;
  std::optional<std::string> sic;

  // Stage trace, written only to intermediate files.
  std::string template_id;
  std::optional<Mention> mention;     // subject mention inside ooc
  std::optional<Mention> ic_mention;  // subject mention (or pronoun) inside ic

  friend bool operator==(const QuestionVariantSet&, const QuestionVariantSet&) = default;
};

struct Turn {
  TurnTriple triple;
  std::string answer;
  std::vector<QuestionVariantSet> paraphrases;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Conversation {
  std::string id;
  EntityRef root;
  std::string theme;
  std::uint64_t seed = 0;
  std::vector<Turn> turns;

  friend bool operator==(const Conversation&, const Conversation&) = default;
};

// with_trace adds "template", "mention" and "ic_mention" to each paraphrase.
Json to_json(const Conversation& conversation, bool with_trace = false);
// Accepts both forms. Throws Error("parse_error") on schema violations.
Conversation conversation_from_json(const Json& j);

std::vector<Conversation> read_dataset(std::istream& in);
std::vector<Conversation> read_dataset_file(const std::string& path);
std::string write_dataset(std::span<const Conversation> conversations, bool with_trace = false);

// Labels of the entities of turns [0, turn_index): the strings a rewrite
// must not repeat and that are ignored when comparing rewrites.
std::vector<std::string> history_labels(const Conversation& conversation, std::size_t turn_index);

// Schema and invariant check. Empty when the conversation is valid.
std::vector<std::string> validate_conversation(const Conversation& conversation,
                                               const WalkConfig& walk = {});

// ---------------------------------------------------------------------------
// Splits

struct SplitRatios {
  double train = 0.66;
  double dev = 0.10;
  double test = 0.24;

  // Throws std::invalid_argument unless the ratios are >= 0 and sum to 1.
  void validate() const;
};

struct DatasetSplits {
  std::vector<std::string> train;  // conversation ids, in dataset order
  std::vector<std::string> dev;
  std::vector<std::string> test;
  std::set<std::string> unseen_themes;
  std::set<std::string> unseen_property;  // ids of conversations using an unseen property

  friend bool operator==(const DatasetSplits&, const DatasetSplits&) = default;
};

Json to_json(const DatasetSplits& splits);
DatasetSplits splits_from_json(const Json& j);

// Unseen-theme and unseen-property conversations go to test. The remaining
// roots are shuffled with seed and cut by ratios; every conversation of a
// root lands in the same split.
DatasetSplits split_dataset(std::span<const Conversation> conversations,
                            const std::set<std::string>& unseen_themes,
                            const std::set<std::string>& unseen_properties,
                            const SplitRatios& ratios = {}, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Statistics

struct StatsRow {
  std::size_t entities = 0;
  std::size_t properties = 0;
  std::size_t triples = 0;  // a fact and its reverse count once
  std::size_t conversations = 0;
  std::array<std::size_t, 3> turns{};  // train, dev, test
  std::size_t total_turns = 0;
  double templates_per_turn = 0.0;
  double references_per_turn = 0.0;  // distinct OOC/IC/SIC strings

  friend bool operator==(const StatsRow&, const StatsRow&) = default;
};

inline constexpr std::string_view kUnseenPropertyRow = "with unseen prop.";
inline constexpr std::string_view kTotalRow = "whole dataset";

struct StatsReport {
  std::map<std::string, StatsRow> themes;
  std::optional<StatsRow> unseen_property;  // present when splits mark any conversation
  StatsRow total;

  Json to_json() const;
};

// Without splits only total_turns is filled in.
StatsReport stats(std::span<const Conversation> conversations,
                  const DatasetSplits* splits = nullptr);

}  // namespace kgconv
