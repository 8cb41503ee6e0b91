#pragma once

#include <map>
#include <string>

#include "kgconv/contextualizer.hpp"
#include "kgconv/dataset_io.hpp"
#include "kgconv/sequence_sampler.hpp"
#include "kgconv/sic_rewriter.hpp"
#include "kgconv/template_engine.hpp"

namespace kgconv {

// Head noun of an entity's most specific type: the last word of the label of
// the type with the fewest instances in the graph. "human" reads "person".
class TypeHeads {
 public:
  explicit TypeHeads(const KnowledgeGraph& graph);

  std::string head_of(const EntityId& entity) const;

 private:
  const KnowledgeGraph& graph_;
  std::map<EntityId, std::size_t> instances_;
};

// OOC paraphrases from every matching template, lowest template id first,
// capped at kMaxParaphrases. Throws TemplateError("no_template") naming the
// property of an uncovered triple.
Conversation verbalize(const TripleSequence& sequence, const std::string& id,
                       const std::string& theme, const TemplateLibrary& library,
                       const KnowledgeGraph& graph);

// Fills the IC variants in place. Reference choices are drawn from a
// generator seeded by the conversation seed. When trace is given, it
// receives the referring-expression history.
void contextualize(Conversation& conversation, const TemplateLibrary& library,
                   const KnowledgeGraph& graph, const Contextualizer& contextualizer,
                   MentionState* trace = nullptr);

// Fills the SIC variants in place, turn by turn, rewriting the IC variant
// when there is one and the OOC otherwise. A turn may not reuse any category
// accepted in the previous turn.
void rewrite(Conversation& conversation, const KnowledgeGraph& graph, const RewriterClient& client,
             const TypeHeads& heads);

Conversation assemble(const TripleSequence& sequence, const std::string& id,
                      const std::string& theme, const TemplateLibrary& library,
                      const KnowledgeGraph& graph, const Contextualizer& contextualizer,
                      const RewriterClient& client, const TypeHeads& heads,
                      MentionState* trace = nullptr);

}  // namespace kgconv
