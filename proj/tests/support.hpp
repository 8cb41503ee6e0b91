#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kgconv/dataset_io.hpp"
#include "kgconv/kg_store.hpp"
#include "kgconv/pipeline.hpp"
#include "kgconv/sic_rewriter.hpp"
#include "kgconv/template_engine.hpp"

namespace kgconv::testing {

inline std::string data_path(const std::string& name) {
  return std::string(KGCONV_DATA_DIR) + "/" + name;
}
inline std::string test_data_path(const std::string& name) {
  return std::string(KGCONV_TEST_DATA_DIR) + "/" + name;
}

inline const KnowledgeGraph& mini_raw() {
  static const KnowledgeGraph g = load_graph_file(data_path("mini_kg.jsonl"));
  return g;
}
inline const KnowledgeGraph& mini_graph() {
  static const KnowledgeGraph g = ingest(mini_raw(), PropertyRules::wikidata_defaults());
  return g;
}
inline const TemplateLibrary& mini_templates() {
  static const TemplateLibrary lib = load_templates_file(data_path("templates.jsonl"));
  return lib;
}
inline PipelineConfig mini_config() { return PipelineConfig::from_file(data_path("config.json")); }

// Small graph builders.
inline Entity entity(const std::string& id, const std::string& label,
                     std::vector<std::string> types = {}, Gender gender = Gender::kUnknown,
                     bool dead = false) {
  Entity e;
  e.id = EntityId(id);
  e.preferred_label = label;
  for (auto& t : types) e.types.insert(EntityId(t));
  e.gender = gender;
  e.is_dead = dead;
  return e;
}

inline Triple triple(const std::string& s, const std::string& p, const std::string& o,
                     bool inverse = false) {
  return Triple{EntityId(s), PropertyId{p, inverse}, EntityId(o), {}};
}

inline Triple literal_triple(const std::string& s, const std::string& p, const std::string& value,
                             Literal::Kind kind = Literal::Kind::kString) {
  return Triple{EntityId(s), PropertyId{p, false}, Literal{kind, value, value}, {}};
}

inline KnowledgeGraph make_graph(const std::vector<Entity>& entities, std::vector<Triple> triples,
                                 std::map<std::string, PropertyInfo> properties = {}) {
  std::map<EntityId, Entity> m;
  for (const auto& e : entities) m[e.id] = e;
  return KnowledgeGraph(std::move(m), std::move(triples), std::move(properties));
}

// Oracle: two-hop neighborhood by linear scans over the triple list.
inline std::vector<Triple> brute_neighborhood(const KnowledgeGraph& g, const EntityId& root) {
  std::set<EntityId> first_objects;
  std::set<Triple> out;
  for (const Triple& t : g.triples()) {
    if (t.subject != root) continue;
    out.insert(t);
    if (const auto* o = as_entity(t.object)) first_objects.insert(*o);
  }
  for (const Triple& t : g.triples())
    if (first_objects.count(t.subject)) out.insert(t);
  return {out.begin(), out.end()};
}

// Oracle: invariant checker written independently of validate_conversation.
inline std::vector<std::string> conversation_problems(const Conversation& c) {
  std::vector<std::string> out;
  auto bad = [&](const std::string& what) { out.push_back(c.id + ": " + what); };
  if (c.turns.size() < 5 || c.turns.size() > 19) bad("length");
  if (c.turns.empty()) return out;
  if (c.turns.front().triple.s.qid != c.root.qid) bad("first subject is not the root");
  std::set<std::tuple<std::string, std::string, bool, std::string>> seen;
  for (std::size_t i = 0; i < c.turns.size(); ++i) {
    const Turn& t = c.turns[i];
    const std::string o = t.triple.o.qid ? *t.triple.o.qid : "lit:" + t.triple.o.label;
    if (!seen.emplace(t.triple.s.qid, t.triple.p.pid, t.triple.p.inverse, o).second)
      bad("repeated triple");
    if (i > 0) {
      const auto& prev = c.turns[i - 1].triple;
      const std::string& s = t.triple.s.qid;
      if (s != c.root.qid && s != prev.s.qid && (!prev.o.qid || s != *prev.o.qid))
        bad("continuity broken at turn " + std::to_string(i));
    }
    if (t.answer != t.triple.o.label) bad("answer differs from object label");
    if (t.paraphrases.empty() || t.paraphrases.size() > 10) bad("paraphrase count");
    std::set<std::string> strings;
    std::size_t n = 0;
    for (const auto& v : t.paraphrases) {
      if (v.ic && *v.ic == v.ooc) bad("ic equals ooc");
      if (v.sic && *v.sic == v.ic.value_or(v.ooc)) bad("sic equals its input");
      for (const auto* s : {&v.ooc, v.ic ? &*v.ic : nullptr, v.sic ? &*v.sic : nullptr}) {
        if (!s) continue;
        ++n;
        strings.insert(*s);
      }
    }
    if (strings.size() != n) bad("question string repeated in turn " + std::to_string(i));
  }
  return out;
}

// Category of every SIC in a turn, re-derived with the classifier.
inline std::set<RewriteCategory> sic_categories(const Conversation& c, std::size_t turn) {
  std::set<RewriteCategory> out;
  const auto labels = history_labels(c, turn);
  for (const auto& v : c.turns[turn].paraphrases)
    if (v.sic) out.insert(classify_candidate(*v.sic, v.ic.value_or(v.ooc), labels));
  return out;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kgconv-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace kgconv::testing
