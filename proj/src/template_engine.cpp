#include "kgconv/template_engine.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "kgconv/error.hpp"
#include "kgconv/jsonl.hpp"
#include "kgconv/lexicon.hpp"
#include "kgconv/text.hpp"

namespace kgconv {

const char* to_string(TemplateSource s) {
  switch (s) {
    case TemplateSource::kSimpleQuestions: return "SimpleQuestions";
    case TemplateSource::kZeroShot: return "ZeroShot";
    case TemplateSource::kNew: return "New";
  }
  return "New";
}

TemplateSource template_source_from_string(const std::string& s) {
  if (s == "SimpleQuestions") return TemplateSource::kSimpleQuestions;
  if (s == "ZeroShot") return TemplateSource::kZeroShot;
  if (s == "New" || s.empty()) return TemplateSource::kNew;
  throw Error("parse_error", "unknown template source '" + s + "'");
}

const char* to_string(Tense t) {
  switch (t) {
    case Tense::kPresent: return "present";
    case Tense::kPast: return "past";
    case Tense::kUnknown: return "unknown";
  }
  return "unknown";
}

Tense detect_tense(std::string_view text) {
  std::string without_slot(text);
  if (auto pos = without_slot.find(kSubjectSlot); pos != std::string::npos)
    without_slot.replace(pos, kSubjectSlot.size(), " ");
  for (const auto& w : text::words(without_slot)) {
    const std::string lw = text::lower(w);
    if (lexicon::present_to_past().count(lw)) return Tense::kPresent;
    if (lexicon::is_past_form(lw)) return Tense::kPast;
  }
  return Tense::kUnknown;
}

void check_slot(std::string_view text) {
  auto first = text.find(kSubjectSlot);
  if (first == std::string_view::npos)
    throw TemplateError("slot_missing", "template has no subject slot: " + std::string(text));
  if (text.find(kSubjectSlot, first + kSubjectSlot.size()) != std::string_view::npos)
    throw TemplateError("slot_duplicated",
                        "template has more than one subject slot: " + std::string(text));
}

// ---------------------------------------------------------------------------
// TemplateLibrary

TemplateLibrary::TemplateLibrary(std::vector<Template> templates) : templates_(std::move(templates)) {
  std::sort(templates_.begin(), templates_.end(),
            [](const Template& a, const Template& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const auto& t = templates_[i];
    check_slot(t.text);
    if (!by_id_.emplace(t.id, i).second)
      throw TemplateError("duplicate_template", "duplicate template id " + t.id);
    by_property_[t.condition.property].push_back(i);
  }
}

std::vector<const Template*> TemplateLibrary::for_property(const PropertyId& p) const {
  std::vector<const Template*> out;
  if (auto it = by_property_.find(p); it != by_property_.end()) {
    for (std::size_t i : it->second) out.push_back(&templates_[i]);
  }
  return out;
}

const Template* TemplateLibrary::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &templates_[it->second];
}

// ---------------------------------------------------------------------------
// Matching and instantiation

bool matches(const ApplicabilityCondition& condition, const Triple& triple,
             const KnowledgeGraph& graph) {
  if (condition.property != triple.property) return false;
  const auto& st = graph.types_of(triple.subject);
  const auto& ot = graph.types_of(triple.object);
  return std::includes(st.begin(), st.end(), condition.subject_types.begin(),
                       condition.subject_types.end()) &&
         std::includes(ot.begin(), ot.end(), condition.object_types.begin(),
                       condition.object_types.end());
}

std::vector<const Template*> select_templates(const TemplateLibrary& library, const Triple& triple,
                                              const KnowledgeGraph& graph) {
  std::vector<const Template*> out;
  for (const Template* t : library.for_property(triple.property)) {
    if (matches(t->condition, triple, graph)) out.push_back(t);
  }
  return out;
}

Instantiation instantiate(const Template& tpl, const Triple& triple, const KnowledgeGraph& graph,
                          std::optional<std::string_view> subject_label) {
  check_slot(tpl.text);
  const std::string label = subject_label ? std::string(*subject_label)
                                          : graph.entity(triple.subject).preferred_label;
  Instantiation out;
  out.question = tpl.text;
  out.mention_pos = out.question.find(kSubjectSlot);
  out.question.replace(out.mention_pos, kSubjectSlot.size(), label);
  out.mention_len = label.size();
  out.answer = graph.label_of(triple.object);
  return out;
}

// ---------------------------------------------------------------------------
// Condition algebra

namespace {

std::set<EntityId> intersect(const std::set<EntityId>& a, const std::set<EntityId>& b) {
  std::set<EntityId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

ApplicabilityCondition merge_conditions(const ApplicabilityCondition& a,
                                        const ApplicabilityCondition& b) {
  if (a.property != b.property) {
    throw TemplateError("property_mismatch", "cannot merge conditions on " + a.property.id +
                                                 " and " + b.property.id);
  }
  return {a.property, intersect(a.subject_types, b.subject_types),
          intersect(a.object_types, b.object_types)};
}

std::size_t support(const ApplicabilityCondition& condition, std::span<const Triple> pool,
                    const KnowledgeGraph& graph) {
  return static_cast<std::size_t>(std::count_if(pool.begin(), pool.end(), [&](const Triple& t) {
    return matches(condition, t, graph);
  }));
}

std::vector<ApplicabilityCondition> cluster_conditions(
    std::span<const ApplicabilityCondition> conditions, std::span<const Triple> pool,
    const KnowledgeGraph& graph, std::size_t min_support) {
  std::set<Triple> unique_pool(pool.begin(), pool.end());
  std::map<PropertyId, std::vector<Triple>> pool_by_property;
  for (const auto& t : unique_pool) pool_by_property[t.property].push_back(t);

  std::map<PropertyId, std::set<ApplicabilityCondition>> groups;
  for (const auto& c : conditions) groups[c.property].insert(c);

  std::vector<ApplicabilityCondition> out;
  for (auto& [property, group] : groups) {
    const auto& local_pool = pool_by_property[property];
    auto support_of = [&](const ApplicabilityCondition& c) { return support(c, local_pool, graph); };

    std::vector<ApplicabilityCondition> current(group.begin(), group.end());
    while (current.size() > 1) {
      bool found = false;
      long best_gain = 0;
      std::size_t best_i = 0, best_j = 0;
      ApplicabilityCondition best_merge;
      for (std::size_t i = 0; i < current.size(); ++i) {
        for (std::size_t j = i + 1; j < current.size(); ++j) {
          auto merged = merge_conditions(current[i], current[j]);
          if (merged.subject_types.empty() && merged.object_types.empty()) continue;
          long gain = static_cast<long>(support_of(merged)) -
                      static_cast<long>(std::max(support_of(current[i]), support_of(current[j])));
          if (!found || gain > best_gain) {
            found = true;
            best_gain = gain;
            best_i = i;
            best_j = j;
            best_merge = std::move(merged);
          }
        }
      }
      if (!found) break;
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(best_j));
      current.erase(current.begin() + static_cast<std::ptrdiff_t>(best_i));
      if (std::find(current.begin(), current.end(), best_merge) == current.end())
        current.push_back(std::move(best_merge));
      std::sort(current.begin(), current.end());
    }
    for (auto& c : current) {
      if (support_of(c) >= min_support) out.push_back(std::move(c));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extraction

Template template_from_qa_pair(const Triple& triple, std::string_view question,
                               const KnowledgeGraph& graph, std::string id) {
  const Entity& subject = graph.entity(triple.subject);
  const std::string haystack = text::lower(question);
  const std::string needle = text::lower(subject.preferred_label);
  // Whole-word search, so "Io" is not found inside "population".
  const auto pos = needle.empty() ? std::string::npos : text::find_word(haystack, needle);
  if (pos == std::string::npos) {
    throw TemplateError("label_not_found", "label '" + subject.preferred_label +
                                               "' does not occur in '" + std::string(question) +
                                               "'");
  }
  if (text::find_word(haystack, needle, pos + needle.size()) != std::string::npos) {
    throw TemplateError("ambiguous_label", "label '" + subject.preferred_label +
                                               "' occurs more than once in '" +
                                               std::string(question) + "'");
  }
  Template tpl;
  tpl.id = std::move(id);
  tpl.text = std::string(question);
  tpl.text.replace(pos, needle.size(), kSubjectSlot);
  tpl.condition = {triple.property, subject.types, graph.types_of(triple.object)};
  tpl.source = TemplateSource::kSimpleQuestions;
  tpl.tense = detect_tense(tpl.text);
  return tpl;
}

// ---------------------------------------------------------------------------
// Template file

TemplateLibrary load_templates(std::istream& in) {
  std::vector<Template> templates;
  std::set<std::string> ids;
  for_each_jsonl(in, [&](const Json& j, std::size_t line) {
    Template t;
    t.id = j.at("id").get<std::string>();
    t.text = j.at("text").get<std::string>();
    t.condition.property = {j.at("property").get<std::string>(), j.value("inverse", false)};
    for (const auto& s : j.value("subject_types", Json::array()))
      t.condition.subject_types.insert(EntityId(s.get<std::string>()));
    for (const auto& o : j.value("object_types", Json::array()))
      t.condition.object_types.insert(EntityId(o.get<std::string>()));
    t.source = template_source_from_string(j.value("source", "New"));
    try {
      check_slot(t.text);
    } catch (const TemplateError& e) {
      throw ParseError(line, e.what());
    }
    if (t.text.empty() || t.text.back() != '?')
      throw ParseError(line, "template text must end with '?'");
    if (!ids.insert(t.id).second) throw ParseError(line, "duplicate template id " + t.id);
    t.tense = detect_tense(t.text);
    templates.push_back(std::move(t));
  });
  return TemplateLibrary(std::move(templates));
}

TemplateLibrary load_templates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  return load_templates(in);
}

void save_templates(std::span<const Template> templates, std::ostream& out) {
  for (const auto& t : templates) {
    Json j;
    j["id"] = t.id;
    j["text"] = t.text;
    j["property"] = t.condition.property.id;
    j["inverse"] = t.condition.property.inverse;
    Json st = Json::array(), ot = Json::array();
    for (const auto& s : t.condition.subject_types) st.push_back(s.str());
    for (const auto& o : t.condition.object_types) ot.push_back(o.str());
    j["subject_types"] = st;
    j["object_types"] = ot;
    j["source"] = to_string(t.source);
    out << j.dump() << '\n';
  }
}

}  // namespace kgconv
