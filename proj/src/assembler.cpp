#include "kgconv/assembler.hpp"

#include <set>

#include "kgconv/error.hpp"
#include "kgconv/text.hpp"

namespace kgconv {

TypeHeads::TypeHeads(const KnowledgeGraph& graph) : graph_(graph) {
  for (const auto& [id, e] : graph.entities())
    for (const auto& t : e.types) ++instances_[t];
}

std::string TypeHeads::head_of(const EntityId& entity) const {
  const Entity* e = graph_.find_entity(entity);
  if (!e) return {};
  const Entity* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& t : e->types) {
    const Entity* type = graph_.find_entity(t);
    if (!type) continue;
    const std::size_t n = instances_.at(t);
    if (!best || n < best_count) {
      best = type;
      best_count = n;
    }
  }
  if (!best) return {};
  const auto words = text::words(best->preferred_label);
  if (words.empty()) return {};
  std::string head = text::lower(words.back());
  return head == "human" ? "person" : head;
}

Conversation verbalize(const TripleSequence& sequence, const std::string& id,
                       const std::string& theme, const TemplateLibrary& library,
                       const KnowledgeGraph& graph) {
  Conversation c;
  c.id = id;
  c.root = {sequence.root.str(), graph.label_of(sequence.root)};
  c.theme = theme;
  c.seed = sequence.seed;
  for (const Triple& t : sequence.triples) {
    const auto templates = select_templates(library, t, graph);
    if (templates.empty()) {
      throw TemplateError("no_template", "no template covers property " +
                                             std::string(t.property.inverse ? "-" : "") +
                                             t.property.id + " (" + graph.property_label(t.property) +
                                             ")");
    }
    Turn turn;
    turn.triple = describe(t, graph);
    std::set<std::string> seen;
    for (const Template* tpl : templates) {
      if (turn.paraphrases.size() == kMaxParaphrases) break;
      Instantiation inst = instantiate(*tpl, t, graph);
      if (!seen.insert(inst.question).second) continue;
      turn.answer = inst.answer;
      turn.paraphrases.push_back({std::move(inst.question), std::nullopt, std::nullopt, tpl->id,
                                  Mention{inst.mention_pos, inst.mention_len}, std::nullopt});
    }
    c.turns.push_back(std::move(turn));
  }
  return c;
}

namespace {

const Template& template_for(const QuestionVariantSet& v, const TemplateLibrary& library) {
  if (v.template_id.empty())
    throw TemplateError("unknown_template", "paraphrase '" + v.ooc + "' carries no template id");
  const Template* tpl = library.find(v.template_id);
  if (!tpl) throw TemplateError("unknown_template", "unknown template id " + v.template_id);
  return *tpl;
}

}  // namespace

void contextualize(Conversation& c, const TemplateLibrary& library, const KnowledgeGraph& graph,
                   const Contextualizer& contextualizer, MentionState* trace) {
  Rng rng = rng_for(c.seed, "reference");
  MentionState local;
  MentionState& state = trace ? *trace : local;
  std::optional<Triple> prev;
  for (Turn& turn : c.turns) {
    const Triple t = resolve(turn.triple, graph);
    const std::string reference = select_reference(graph.entity(t.subject), state, rng);
    std::set<std::string> strings;
    for (const auto& v : turn.paraphrases) strings.insert(v.ooc);
    for (auto& v : turn.paraphrases) {
      auto r = contextualizer.contextualize(template_for(v, library), t, prev ? &*prev : nullptr,
                                            reference);
      v.ic = std::nullopt;
      v.ic_mention = std::nullopt;
      if (r.ic && strings.insert(*r.ic).second) {
        v.ic = std::move(r.ic);
        v.ic_mention = r.mention;
      }
    }
    // The answer introduces its entity by its preferred label.
    if (const auto* o = as_entity(t.object)) state.note(*o, graph.entity(*o).preferred_label);
    prev = t;
  }
}

void rewrite(Conversation& c, const KnowledgeGraph& graph, const RewriterClient& client,
             const TypeHeads& heads) {
  std::set<RewriteCategory> prev_categories;
  std::vector<QaPair> history;
  std::set<std::string> seen_entities;
  for (std::size_t i = 0; i < c.turns.size(); ++i) {
    Turn& turn = c.turns[i];
    const auto labels = history_labels(c, i);
    const EntityId subject(turn.triple.s.qid);
    const bool mentioned_before = seen_entities.count(subject.str()) != 0;
    const Entity& entity = graph.entity(subject);

    std::set<std::string> strings;
    for (const auto& v : turn.paraphrases) {
      strings.insert(v.ooc);
      if (v.ic) strings.insert(*v.ic);
    }
    std::set<RewriteCategory> categories;
    for (auto& v : turn.paraphrases) {
      v.sic = std::nullopt;
      // The rewriter sees the most contextual form available.
      const std::string& input = v.ic ? *v.ic : v.ooc;
      const auto mention = v.ic ? v.ic_mention : v.mention;
      RewriteRequest request{input, history, mentioned_before ? mention : std::nullopt,
                             infer_gender(entity), heads.head_of(subject)};
      auto candidates = generate_candidates(request, client);
      for (auto& cand : candidates) cand.category = classify_candidate(cand.text, input, labels);
      auto chosen = select_rewrite(candidates, prev_categories);
      if (!chosen || chosen->text == input || !strings.insert(chosen->text).second) continue;
      v.sic = std::move(chosen->text);
      categories.insert(chosen->category);
    }
    prev_categories = std::move(categories);

    if (!turn.paraphrases.empty()) history.push_back({turn.paraphrases.front().ooc, turn.answer});
    seen_entities.insert(turn.triple.s.qid);
    if (turn.triple.o.qid) seen_entities.insert(*turn.triple.o.qid);
  }
}

Conversation assemble(const TripleSequence& sequence, const std::string& id,
                      const std::string& theme, const TemplateLibrary& library,
                      const KnowledgeGraph& graph, const Contextualizer& contextualizer,
                      const RewriterClient& client, const TypeHeads& heads, MentionState* trace) {
  Conversation c = verbalize(sequence, id, theme, library, graph);
  contextualize(c, library, graph, contextualizer, trace);
  rewrite(c, graph, client, heads);
  return c;
}

}  // namespace kgconv
