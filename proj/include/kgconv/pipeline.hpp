#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgconv/assembler.hpp"
#include "kgconv/dataset_io.hpp"
#include "kgconv/kg_store.hpp"
#include "kgconv/sequence_sampler.hpp"
#include "kgconv/template_engine.hpp"

namespace kgconv {

struct PipelineConfig {
  std::string kg_path;
  std::string templates_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  WalkConfig walk;
  std::optional<std::string> rewriter_url;
  std::optional<std::string> determiner_url;
  std::set<std::string> unseen_themes{"space object", "taxon"};
  std::set<std::string> unseen_properties;
  SplitRatios ratios;
  std::map<std::string, EntityId> themes;  // theme name -> class id
  PropertyRules property_rules = PropertyRules::wikidata_defaults();
  std::size_t min_neighborhood = 20;
  std::size_t jobs = 0;  // 0: one per hardware thread

  // Keys: kg, templates, out, seed, per_root, min_len, max_len,
  // rewriter_url, determiner_url, unseen_themes, unseen_properties,
  // split [train, dev, test], themes {name: class}, rules (path),
  // min_neighborhood, jobs. Missing keys keep their defaults.
  // Relative paths in j are resolved against base when it is non-empty.
  static PipelineConfig from_json(const Json& j, const std::string& base = {});
  // Relative paths resolve against the config file's directory.
  static PipelineConfig from_file(const std::string& path);

  std::uint64_t required_seed() const;  // throws Error("config_error")
  std::size_t effective_jobs() const;
};

// Runs fn(0..n-1) on up to jobs threads. The first exception is rethrown
// after all workers stop.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

// Property filtering followed by reverse augmentation. Idempotent.
KnowledgeGraph ingest(const KnowledgeGraph& raw, const PropertyRules& rules);

struct SampledSequence {
  std::string id;
  std::string theme;
  TripleSequence sequence;

  friend bool operator==(const SampledSequence&, const SampledSequence&) = default;
};

Json to_json(const SampledSequence& s);
SampledSequence sampled_sequence_from_json(const Json& j);
std::vector<SampledSequence> read_sequences_file(const std::string& path);
std::string write_sequences(std::span<const SampledSequence> sequences);

// Walks over the template-covered part of each eligible root's
// neighborhood. A root belongs to the first theme (by name) whose class it
// has. Roots whose covered neighborhood cannot yield a walk are skipped.
std::vector<SampledSequence> sample(const KnowledgeGraph& graph, const TemplateLibrary& library,
                                    const PipelineConfig& config);

std::unique_ptr<DeterminerOracle> make_determiner(const PipelineConfig& config);
std::unique_ptr<RewriterClient> make_rewriter(const PipelineConfig& config);

std::vector<Conversation> verbalize_all(std::span<const SampledSequence> sequences,
                                        const TemplateLibrary& library, const KnowledgeGraph& graph,
                                        std::size_t jobs);
void contextualize_all(std::vector<Conversation>& conversations, const TemplateLibrary& library,
                       const KnowledgeGraph& graph, const DeterminerOracle& determiner,
                       std::size_t jobs);
void rewrite_all(std::vector<Conversation>& conversations, const KnowledgeGraph& graph,
                 const RewriterClient& client, std::size_t jobs);

struct EmitResult {
  std::vector<Conversation> conversations;
  DatasetSplits splits;
};

// Drops the stage trace and splits the conversations.
EmitResult finalize(std::vector<Conversation> conversations, const PipelineConfig& config);
// All stages from the raw graph to the final conversations and splits.
EmitResult run_pipeline(const PipelineConfig& config);
// dataset.jsonl, train.jsonl, dev.jsonl, test.jsonl and splits.json.
void write_outputs(const EmitResult& result, const std::string& out_dir);

}  // namespace kgconv
