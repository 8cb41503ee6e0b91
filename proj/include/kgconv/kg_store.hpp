#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kgconv {

// Opaque entity identifier, e.g. "Q9592".
struct EntityId {
  std::string value;

  EntityId() = default;
  explicit EntityId(std::string v) : value(std::move(v)) {}

  const std::string& str() const { return value; }
  bool empty() const { return value.empty(); }

  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend std::strong_ordering operator<=>(const EntityId& a, const EntityId& b) {
    return a.value <=> b.value;
  }
};

enum class Gender { kMale, kFemale, kNeutral, kUnknown };

const char* to_string(Gender g);
Gender gender_from_string(const std::string& s);

// Well-known class ids used by the gender and surname rules.
inline const EntityId kHumanClass{"Q5"};
inline const EntityId kFictionalCharacterClass{"Q95074"};

struct Entity {
  EntityId id;
  std::string preferred_label;
  std::vector<std::string> alt_labels;
  std::set<EntityId> types;
  Gender gender = Gender::kUnknown;
  bool is_dead = false;
  std::optional<std::string> surname;

  bool has_type(const EntityId& cls) const { return types.count(cls) != 0; }
  bool is_person() const { return has_type(kHumanClass); }
};

// A property, possibly read in the reverse direction (-p).
struct PropertyId {
  std::string id;
  bool inverse = false;

  PropertyId inverted() const { return {id, !inverse}; }

  friend bool operator==(const PropertyId&, const PropertyId&) = default;
  friend std::strong_ordering operator<=>(const PropertyId& a, const PropertyId& b) {
    if (auto c = a.id <=> b.id; c != 0) return c;
    return a.inverse <=> b.inverse;
  }
};

struct PropertyInfo {
  std::string label;
  // Property links entities to an identifier in some other database.
  bool external_id = false;
};

struct Literal {
  enum class Kind { kString, kNumber, kDate };

  Kind kind = Kind::kString;
  std::string value;
  std::string label;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.value <=> b.value; c != 0) return c;
    return a.label <=> b.label;
  }
};

const char* to_string(Literal::Kind k);
Literal::Kind literal_kind_from_string(const std::string& s);

using Node = std::variant<EntityId, Literal>;

inline const EntityId* as_entity(const Node& n) { return std::get_if<EntityId>(&n); }
inline const Literal* as_literal(const Node& n) { return std::get_if<Literal>(&n); }

struct Qualifiers {
  std::optional<std::string> end_time;  // ISO-8601 date

  friend bool operator==(const Qualifiers&, const Qualifiers&) = default;
};

// A (subject, property, object) fact. Identity and ordering ignore the
// qualifiers.
struct Triple {
  EntityId subject;
  PropertyId property;
  Node object;
  Qualifiers qualifiers;

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.subject == b.subject && a.property == b.property && a.object == b.object;
  }
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
    if (auto c = a.subject <=> b.subject; c != 0) return c;
    if (auto c = a.property <=> b.property; c != 0) return c;
    return a.object <=> b.object;
  }
};

// Indexed, immutable triple store. Construction checks that every subject
// and entity object resolves, drops duplicate facts and builds the
// by-subject and by-(subject, property) indexes.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  KnowledgeGraph(std::map<EntityId, Entity> entities, std::vector<Triple> triples,
                 std::map<std::string, PropertyInfo> properties = {});

  const std::map<EntityId, Entity>& entities() const { return entities_; }
  const std::map<std::string, PropertyInfo>& properties() const { return properties_; }
  std::span<const Triple> triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }

  const Entity* find_entity(const EntityId& id) const;
  // Throws UnknownEntityError.
  const Entity& entity(const EntityId& id) const;

  std::vector<const Triple*> outgoing(const EntityId& subject) const;
  std::vector<const Triple*> outgoing(const EntityId& subject, const PropertyId& p) const;

  // The stored triple with the same (s, p, o), or nullptr.
  const Triple* find(const Triple& fact) const;
  bool contains(const Triple& fact) const { return find(fact) != nullptr; }

  // Entities with no incident triple cannot anchor a conversation.
  bool root_ineligible(const EntityId& id) const { return isolated_.count(id) != 0; }

  std::string property_label(const PropertyId& p) const;
  std::string label_of(const Node& n) const;
  // Literal nodes have no types.
  const std::set<EntityId>& types_of(const Node& n) const;

 private:
  std::map<EntityId, Entity> entities_;
  std::map<std::string, PropertyInfo> properties_;
  std::vector<Triple> triples_;
  std::map<EntityId, std::vector<std::size_t>> by_subject_;
  std::map<std::pair<EntityId, PropertyId>, std::vector<std::size_t>> by_subject_property_;
  std::map<Triple, std::size_t> by_fact_;
  std::set<EntityId> isolated_;
};

// Reads the line-delimited JSON graph format. Entities without an English
// (preferred) label are dropped together with every triple touching them.
// Throws ParseError and DanglingReferenceError.
KnowledgeGraph load_graph(std::istream& in);
KnowledgeGraph load_graph_file(const std::string& path);
void save_graph(const KnowledgeGraph& graph, std::ostream& out);

struct PropertyRules {
  std::set<std::string> excluded;
  // When non-empty, a namespaced property id ("ns:P1") must use one of these.
  std::vector<std::string> allowed_namespaces;
  bool drop_external_ids = false;

  // wdt: namespace only, external identifiers dropped.
  static PropertyRules wikidata_defaults();
  static PropertyRules from_json_file(const std::string& path);

  bool excludes(const std::string& property, const KnowledgeGraph& graph) const;
};

KnowledgeGraph filter_properties(const KnowledgeGraph& graph, const PropertyRules& rules);

// Adds (o, -p, s) for every entity-object triple (s, p, o). Qualifiers are
// copied onto the reversed triple.
KnowledgeGraph augment_reverse(const KnowledgeGraph& graph);

// All triples (r, p, o1) and their successors (o1, q, o2), sorted.
std::vector<Triple> neighborhood(const KnowledgeGraph& graph, const EntityId& root);

std::map<std::string, std::vector<EntityId>> eligible_roots(
    const KnowledgeGraph& graph, const std::map<std::string, EntityId>& theme_classes,
    std::size_t min_size = 20);

}  // namespace kgconv
