#include "kgconv/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "kgconv/error.hpp"
#include "kgconv/jsonl.hpp"

namespace kgconv {

const char* to_string(Gender g) {
  switch (g) {
    case Gender::kMale: return "male";
    case Gender::kFemale: return "female";
    case Gender::kNeutral: return "neutral";
    case Gender::kUnknown: return "unknown";
  }
  return "unknown";
}

Gender gender_from_string(const std::string& s) {
  if (s == "male") return Gender::kMale;
  if (s == "female") return Gender::kFemale;
  if (s == "neutral") return Gender::kNeutral;
  if (s == "unknown" || s.empty()) return Gender::kUnknown;
  throw Error("parse_error", "unknown gender '" + s + "'");
}

const char* to_string(Literal::Kind k) {
  switch (k) {
    case Literal::Kind::kString: return "string";
    case Literal::Kind::kNumber: return "number";
    case Literal::Kind::kDate: return "date";
  }
  return "string";
}

Literal::Kind literal_kind_from_string(const std::string& s) {
  if (s == "string") return Literal::Kind::kString;
  if (s == "number") return Literal::Kind::kNumber;
  if (s == "date") return Literal::Kind::kDate;
  throw Error("parse_error", "unknown literal kind '" + s + "'");
}

// ---------------------------------------------------------------------------
// KnowledgeGraph

KnowledgeGraph::KnowledgeGraph(std::map<EntityId, Entity> entities, std::vector<Triple> triples,
                               std::map<std::string, PropertyInfo> properties)
    : entities_(std::move(entities)), properties_(std::move(properties)) {
  std::set<std::string> dangling;
  for (const auto& t : triples) {
    if (!entities_.count(t.subject)) dangling.insert(t.subject.str());
    if (const auto* o = as_entity(t.object); o && !entities_.count(*o)) dangling.insert(o->str());
  }
  if (!dangling.empty()) {
    throw DanglingReferenceError(std::vector<std::string>(dangling.begin(), dangling.end()));
  }

  std::set<EntityId> touched;
  triples_.reserve(triples.size());
  for (auto& t : triples) {
    if (by_fact_.count(t)) continue;
    std::size_t index = triples_.size();
    by_fact_.emplace(t, index);
    by_subject_[t.subject].push_back(index);
    by_subject_property_[{t.subject, t.property}].push_back(index);
    touched.insert(t.subject);
    if (const auto* o = as_entity(t.object)) touched.insert(*o);
    triples_.push_back(std::move(t));
  }
  for (const auto& [id, entity] : entities_) {
    if (!touched.count(id)) isolated_.insert(id);
  }
}

const Entity* KnowledgeGraph::find_entity(const EntityId& id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity& KnowledgeGraph::entity(const EntityId& id) const {
  if (const auto* e = find_entity(id)) return *e;
  throw UnknownEntityError(id.str());
}

std::vector<const Triple*> KnowledgeGraph::outgoing(const EntityId& subject) const {
  std::vector<const Triple*> out;
  if (auto it = by_subject_.find(subject); it != by_subject_.end()) {
    out.reserve(it->second.size());
    for (std::size_t i : it->second) out.push_back(&triples_[i]);
  }
  return out;
}

std::vector<const Triple*> KnowledgeGraph::outgoing(const EntityId& subject,
                                                    const PropertyId& p) const {
  std::vector<const Triple*> out;
  if (auto it = by_subject_property_.find({subject, p}); it != by_subject_property_.end()) {
    for (std::size_t i : it->second) out.push_back(&triples_[i]);
  }
  return out;
}

const Triple* KnowledgeGraph::find(const Triple& fact) const {
  auto it = by_fact_.find(fact);
  return it == by_fact_.end() ? nullptr : &triples_[it->second];
}

std::string KnowledgeGraph::property_label(const PropertyId& p) const {
  auto it = properties_.find(p.id);
  if (it == properties_.end() || it->second.label.empty()) return p.id;
  return it->second.label;
}

std::string KnowledgeGraph::label_of(const Node& n) const {
  if (const auto* lit = as_literal(n)) return lit->label;
  return entity(std::get<EntityId>(n)).preferred_label;
}

const std::set<EntityId>& KnowledgeGraph::types_of(const Node& n) const {
  static const std::set<EntityId> kNoTypes;
  if (const auto* id = as_entity(n)) {
    if (const auto* e = find_entity(*id)) return e->types;
  }
  return kNoTypes;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

Entity entity_from_json(const Json& j) {
  Entity e;
  e.id = EntityId(j.at("id").get<std::string>());
  if (e.id.empty()) throw Error("parse_error", "empty entity id");
  e.preferred_label = j.value("preferred_label", "");
  for (const auto& l : j.value("alt_labels", Json::array())) {
    auto label = l.get<std::string>();
    if (label.empty() || label == e.preferred_label) continue;
    if (std::find(e.alt_labels.begin(), e.alt_labels.end(), label) == e.alt_labels.end())
      e.alt_labels.push_back(std::move(label));
  }
  for (const auto& t : j.value("types", Json::array())) e.types.insert(EntityId(t.get<std::string>()));
  e.gender = gender_from_string(j.value("gender", "unknown"));
  e.is_dead = j.value("is_dead", false);
  if (j.contains("surname") && j.at("surname").is_string()) {
    auto s = j.at("surname").get<std::string>();
    if (!s.empty()) e.surname = std::move(s);
  }
  return e;
}

Json entity_to_json(const Entity& e) {
  Json j;
  j["kind"] = "entity";
  j["id"] = e.id.str();
  j["preferred_label"] = e.preferred_label;
  j["alt_labels"] = e.alt_labels;
  Json types = Json::array();
  for (const auto& t : e.types) types.push_back(t.str());
  j["types"] = types;
  j["gender"] = to_string(e.gender);
  j["is_dead"] = e.is_dead;
  if (e.surname) j["surname"] = *e.surname;
  return j;
}

}  // namespace

KnowledgeGraph load_graph(std::istream& in) {
  std::map<EntityId, Entity> entities;
  std::set<EntityId> unlabeled;
  std::map<std::string, PropertyInfo> properties;
  std::vector<Triple> triples;

  for_each_jsonl(in, [&](const Json& record, std::size_t line) {
    const std::string kind = record.at("kind").get<std::string>();
    if (kind == "entity") {
      Entity e = entity_from_json(record);
      if (entities.count(e.id) || unlabeled.count(e.id))
        throw ParseError(line, "duplicate entity " + e.id.str());
      if (e.preferred_label.empty()) {
        unlabeled.insert(e.id);
      } else {
        entities.emplace(e.id, std::move(e));
      }
    } else if (kind == "property") {
      PropertyInfo info;
      info.label = record.value("label", "");
      info.external_id = record.value("datatype", "") == "external-id";
      properties[record.at("id").get<std::string>()] = std::move(info);
    } else if (kind == "triple") {
      triples.push_back(triple_from_json(record));
    } else {
      throw ParseError(line, "unknown record kind '" + kind + "'");
    }
  });

  if (!unlabeled.empty()) {
    std::erase_if(triples, [&](const Triple& t) {
      const auto* o = as_entity(t.object);
      return unlabeled.count(t.subject) || (o && unlabeled.count(*o));
    });
  }
  return KnowledgeGraph(std::move(entities), std::move(triples), std::move(properties));
}

KnowledgeGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  return load_graph(in);
}

void save_graph(const KnowledgeGraph& graph, std::ostream& out) {
  for (const auto& [id, info] : graph.properties()) {
    Json j;
    j["kind"] = "property";
    j["id"] = id;
    j["label"] = info.label;
    if (info.external_id) j["datatype"] = "external-id";
    out << j.dump() << '\n';
  }
  for (const auto& [id, e] : graph.entities()) out << entity_to_json(e).dump() << '\n';
  for (const auto& t : graph.triples()) {
    Json j;
    j["kind"] = "triple";
    const Json body = triple_to_json(t);
    for (const auto& [k, v] : body.items()) j[k] = v;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Filtering and augmentation

PropertyRules PropertyRules::wikidata_defaults() {
  PropertyRules rules;
  rules.allowed_namespaces = {"wdt"};
  rules.drop_external_ids = true;
  return rules;
}

PropertyRules PropertyRules::from_json_file(const std::string& path) {
  Json j = Json::parse(read_file(path));
  PropertyRules rules;
  for (const auto& p : j.value("excluded", Json::array())) rules.excluded.insert(p.get<std::string>());
  for (const auto& ns : j.value("allowed_namespaces", Json::array()))
    rules.allowed_namespaces.push_back(ns.get<std::string>());
  rules.drop_external_ids = j.value("drop_external_ids", false);
  return rules;
}

bool PropertyRules::excludes(const std::string& property, const KnowledgeGraph& graph) const {
  if (excluded.count(property)) return true;
  if (auto colon = property.find(':'); colon != std::string::npos && !allowed_namespaces.empty()) {
    const std::string ns = property.substr(0, colon);
    if (std::find(allowed_namespaces.begin(), allowed_namespaces.end(), ns) ==
        allowed_namespaces.end())
      return true;
  }
  if (drop_external_ids) {
    auto it = graph.properties().find(property);
    if (it != graph.properties().end() && it->second.external_id) return true;
  }
  return false;
}

KnowledgeGraph filter_properties(const KnowledgeGraph& graph, const PropertyRules& rules) {
  std::vector<Triple> kept;
  kept.reserve(graph.size());
  for (const auto& t : graph.triples()) {
    if (!rules.excludes(t.property.id, graph)) kept.push_back(t);
  }
  return KnowledgeGraph(graph.entities(), std::move(kept), graph.properties());
}

KnowledgeGraph augment_reverse(const KnowledgeGraph& graph) {
  std::vector<Triple> triples(graph.triples().begin(), graph.triples().end());
  for (const auto& t : graph.triples()) {
    const auto* o = as_entity(t.object);
    if (!o) continue;
    Triple reversed{*o, t.property.inverted(), t.subject, t.qualifiers};
    if (!graph.contains(reversed)) triples.push_back(std::move(reversed));
  }
  return KnowledgeGraph(graph.entities(), std::move(triples), graph.properties());
}

std::vector<Triple> neighborhood(const KnowledgeGraph& graph, const EntityId& root) {
  if (!graph.find_entity(root)) throw UnknownEntityError(root.str());
  std::set<Triple> result;
  for (const Triple* first : graph.outgoing(root)) {
    result.insert(*first);
    if (const auto* o1 = as_entity(first->object)) {
      for (const Triple* second : graph.outgoing(*o1)) result.insert(*second);
    }
  }
  return {result.begin(), result.end()};
}

std::map<std::string, std::vector<EntityId>> eligible_roots(
    const KnowledgeGraph& graph, const std::map<std::string, EntityId>& theme_classes,
    std::size_t min_size) {
  std::map<std::string, std::vector<EntityId>> roots;
  for (const auto& [theme, cls] : theme_classes) roots[theme];
  std::map<EntityId, std::size_t> sizes;
  for (const auto& [id, entity] : graph.entities()) {
    if (graph.root_ineligible(id)) continue;
    for (const auto& [theme, cls] : theme_classes) {
      if (!entity.has_type(cls)) continue;
      auto it = sizes.find(id);
      if (it == sizes.end()) it = sizes.emplace(id, neighborhood(graph, id).size()).first;
      if (it->second >= min_size) roots[theme].push_back(id);
    }
  }
  return roots;
}

}  // namespace kgconv
