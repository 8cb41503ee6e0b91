#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgconv/kg_store.hpp"

namespace kgconv {

// Marker for the subject slot in template text.
inline constexpr std::string_view kSubjectSlot = "{SUBJECT}";

// Gate (property, subject types, object types). An empty type set places no
// constraint on that side.
struct ApplicabilityCondition {
  PropertyId property;
  std::set<EntityId> subject_types;
  std::set<EntityId> object_types;

  friend bool operator==(const ApplicabilityCondition&, const ApplicabilityCondition&) = default;
  friend auto operator<=>(const ApplicabilityCondition&, const ApplicabilityCondition&) = default;
};

enum class TemplateSource { kSimpleQuestions, kZeroShot, kNew };
enum class Tense { kPresent, kPast, kUnknown };

const char* to_string(TemplateSource s);
TemplateSource template_source_from_string(const std::string& s);
const char* to_string(Tense t);

struct Template {
  std::string id;
  std::string text;
  ApplicabilityCondition condition;
  TemplateSource source = TemplateSource::kNew;
  Tense tense = Tense::kUnknown;
};

// Present when the first auxiliary outside the slot is is/are/has/does...,
// past for was/were/had/did, unknown otherwise.
Tense detect_tense(std::string_view text);

// Throws TemplateError unless text holds exactly one subject slot.
void check_slot(std::string_view text);

class TemplateLibrary {
 public:
  TemplateLibrary() = default;
  // Sorts by id; rejects duplicate ids and malformed slots.
  explicit TemplateLibrary(std::vector<Template> templates);

  const std::vector<Template>& templates() const { return templates_; }
  std::size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }

  // Templates declared for p, in id order.
  std::vector<const Template*> for_property(const PropertyId& p) const;
  const Template* find(const std::string& id) const;

 private:
  std::vector<Template> templates_;
  std::map<PropertyId, std::vector<std::size_t>> by_property_;
  std::map<std::string, std::size_t> by_id_;
};

bool matches(const ApplicabilityCondition& condition, const Triple& triple,
             const KnowledgeGraph& graph);

std::vector<const Template*> select_templates(const TemplateLibrary& library, const Triple& triple,
                                              const KnowledgeGraph& graph);

struct Instantiation {
  std::string question;
  std::string answer;
  // Byte range of the subject mention inside question.
  std::size_t mention_pos = 0;
  std::size_t mention_len = 0;
};

// Fills the slot with subject_label, or with the subject's preferred label
// when none is given. The answer is the object's display label.
Instantiation instantiate(const Template& tpl, const Triple& triple, const KnowledgeGraph& graph,
                          std::optional<std::string_view> subject_label = std::nullopt);

// (p, S1 ∩ S2, O1 ∩ O2). Throws TemplateError("property_mismatch").
ApplicabilityCondition merge_conditions(const ApplicabilityCondition& a,
                                        const ApplicabilityCondition& b);

std::size_t support(const ApplicabilityCondition& condition, std::span<const Triple> pool,
                    const KnowledgeGraph& graph);

// Agglomerative merging per property. Each round merges the pair whose merged
// condition gains the most support over the larger of the two; a merge that
// would leave both type sets empty is never taken. Conditions supported by
// fewer than min_support pool triples are dropped at the end.
std::vector<ApplicabilityCondition> cluster_conditions(
    std::span<const ApplicabilityCondition> conditions, std::span<const Triple> pool,
    const KnowledgeGraph& graph, std::size_t min_support = 5);

// Replaces the single (case-insensitive) occurrence of the subject label in
// question by the slot; condition = (p, types(s), types(o)).
// Throws TemplateError("label_not_found" | "ambiguous_label").
Template template_from_qa_pair(const Triple& triple, std::string_view question,
                               const KnowledgeGraph& graph, std::string id = {});

TemplateLibrary load_templates(std::istream& in);
TemplateLibrary load_templates_file(const std::string& path);
void save_templates(std::span<const Template> templates, std::ostream& out);

}  // namespace kgconv
