#include "kgconv/pipeline.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "kgconv/error.hpp"

namespace kgconv {

PipelineConfig PipelineConfig::from_json(const Json& j, const std::string& base) {
  PipelineConfig c;
  auto path_at = [&](const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    std::filesystem::path p = j.at(key).get<std::string>();
    if (!base.empty() && p.is_relative()) p = std::filesystem::path(base) / p;
    return p.string();
  };
  try {
    c.kg_path = path_at("kg", c.kg_path);
    c.templates_path = path_at("templates", c.templates_path);
    c.out_path = path_at("out", c.out_path);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    c.walk.per_root = j.value("per_root", c.walk.per_root);
    c.walk.min_len = j.value("min_len", c.walk.min_len);
    c.walk.max_len = j.value("max_len", c.walk.max_len);
    if (j.contains("rewriter_url")) c.rewriter_url = j.at("rewriter_url").get<std::string>();
    if (j.contains("determiner_url")) c.determiner_url = j.at("determiner_url").get<std::string>();
    if (j.contains("unseen_themes"))
      c.unseen_themes = j.at("unseen_themes").get<std::set<std::string>>();
    if (j.contains("unseen_properties"))
      c.unseen_properties = j.at("unseen_properties").get<std::set<std::string>>();
    if (j.contains("split")) {
      const auto r = j.at("split").get<std::vector<double>>();
      if (r.size() != 3) throw Error("config_error", "split needs three ratios");
      c.ratios = {r[0], r[1], r[2]};
      try {
        c.ratios.validate();
      } catch (const std::invalid_argument& e) {
        throw Error("config_error", e.what());
      }
    }
    const Json themes = j.value("themes", Json::object());
    for (const auto& [theme, cls] : themes.items()) c.themes[theme] = EntityId(cls.get<std::string>());
    if (j.contains("rules")) c.property_rules = PropertyRules::from_json_file(path_at("rules", {}));
    c.min_neighborhood = j.value("min_neighborhood", c.min_neighborhood);
    c.jobs = j.value("jobs", c.jobs);
  } catch (const Json::exception& e) {
    throw Error("config_error", e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  try {
    return from_json(Json::parse(read_file(path)),
                     std::filesystem::path(path).parent_path().string());
  } catch (const Json::parse_error& e) {
    throw Error("config_error", path + ": " + e.what());
  }
}

std::uint64_t PipelineConfig::required_seed() const {
  if (!seed) throw Error("config_error", "a seed is required (--seed or \"seed\" in the config)");
  return *seed;
}

std::size_t PipelineConfig::effective_jobs() const {
  if (jobs > 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

KnowledgeGraph ingest(const KnowledgeGraph& raw, const PropertyRules& rules) {
  return augment_reverse(filter_properties(raw, rules));
}

// ---------------------------------------------------------------------------
// Sequences

Json to_json(const SampledSequence& s) {
  Json triples = Json::array();
  for (const auto& t : s.sequence.triples) triples.push_back(triple_to_json(t));
  return Json{{"id", s.id},
              {"theme", s.theme},
              {"root", s.sequence.root.str()},
              {"seed", s.sequence.seed},
              {"triples", std::move(triples)}};
}

SampledSequence sampled_sequence_from_json(const Json& j) {
  SampledSequence s;
  s.id = j.at("id").get<std::string>();
  s.theme = j.at("theme").get<std::string>();
  s.sequence.root = EntityId(j.at("root").get<std::string>());
  s.sequence.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("triples")) s.sequence.triples.push_back(triple_from_json(t));
  return s;
}

std::vector<SampledSequence> read_sequences_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  std::vector<SampledSequence> out;
  for_each_jsonl(in, [&](const Json& j, std::size_t) { out.push_back(sampled_sequence_from_json(j)); });
  return out;
}

std::string write_sequences(std::span<const SampledSequence> sequences) {
  std::string out;
  for (const auto& s : sequences) {
    out += to_json(s).dump();
    out += '\n';
  }
  return out;
}

std::vector<SampledSequence> sample(const KnowledgeGraph& graph, const TemplateLibrary& library,
                                    const PipelineConfig& config) {
  config.walk.validate();
  const std::uint64_t seed = config.required_seed();
  if (config.themes.empty()) throw Error("config_error", "no themes configured");

  std::vector<std::pair<std::string, EntityId>> roots;
  std::set<EntityId> assigned;
  for (const auto& [theme, ids] : eligible_roots(graph, config.themes, config.min_neighborhood)) {
    for (const auto& id : ids)
      if (assigned.insert(id).second) roots.emplace_back(theme, id);
  }

  std::vector<std::vector<SampledSequence>> per_root(roots.size());
  parallel_for(roots.size(), config.effective_jobs(), [&](std::size_t i) {
    const auto& [theme, root] = roots[i];
    std::vector<Triple> covered;
    for (auto& t : neighborhood(graph, root))
      if (!select_templates(library, t, graph).empty()) covered.push_back(std::move(t));
    Rng rng = rng_for(seed, root.str());
    std::vector<TripleSequence> seqs;
    try {
      seqs = sample_conversations(covered, root, config.walk, rng);
    } catch (const SamplingExhaustedError&) {
      return;
    }
    for (std::size_t k = 0; k < seqs.size(); ++k)
      per_root[i].push_back({root.str() + "-" + std::to_string(k), theme, std::move(seqs[k])});
  });

  std::vector<SampledSequence> out;
  for (auto& group : per_root)
    for (auto& s : group) out.push_back(std::move(s));
  return out;
}

std::unique_ptr<DeterminerOracle> make_determiner(const PipelineConfig& config) {
  auto lexicon = std::make_unique<LexiconDeterminer>();
  if (!config.determiner_url) return lexicon;
  return std::make_unique<FailoverDeterminer>(
      std::make_unique<HttpDeterminerOracle>(*config.determiner_url), std::move(lexicon));
}

std::unique_ptr<RewriterClient> make_rewriter(const PipelineConfig& config) {
  auto fallback = std::make_unique<FallbackRewriter>();
  if (!config.rewriter_url) return fallback;
  return std::make_unique<FailoverRewriter>(std::make_unique<HttpRewriterClient>(*config.rewriter_url),
                                            std::move(fallback));
}

std::vector<Conversation> verbalize_all(std::span<const SampledSequence> sequences,
                                        const TemplateLibrary& library, const KnowledgeGraph& graph,
                                        std::size_t jobs) {
  std::vector<Conversation> out(sequences.size());
  parallel_for(sequences.size(), jobs, [&](std::size_t i) {
    out[i] = verbalize(sequences[i].sequence, sequences[i].id, sequences[i].theme, library, graph);
  });
  return out;
}

void contextualize_all(std::vector<Conversation>& conversations, const TemplateLibrary& library,
                       const KnowledgeGraph& graph, const DeterminerOracle& determiner,
                       std::size_t jobs) {
  const Contextualizer contextualizer(graph, determiner);
  parallel_for(conversations.size(), jobs, [&](std::size_t i) {
    contextualize(conversations[i], library, graph, contextualizer);
  });
}

void rewrite_all(std::vector<Conversation>& conversations, const KnowledgeGraph& graph,
                 const RewriterClient& client, std::size_t jobs) {
  const TypeHeads heads(graph);
  parallel_for(conversations.size(), jobs,
               [&](std::size_t i) { rewrite(conversations[i], graph, client, heads); });
}

EmitResult finalize(std::vector<Conversation> conversations, const PipelineConfig& config) {
  for (auto& c : conversations) {
    for (auto& t : c.turns) {
      for (auto& v : t.paraphrases) {
        v.template_id.clear();
        v.mention.reset();
        v.ic_mention.reset();
      }
    }
  }
  EmitResult result;
  result.splits = split_dataset(conversations, config.unseen_themes, config.unseen_properties,
                                config.ratios, config.required_seed());
  result.conversations = std::move(conversations);
  return result;
}

EmitResult run_pipeline(const PipelineConfig& config) {
  config.required_seed();
  const KnowledgeGraph graph = ingest(load_graph_file(config.kg_path), config.property_rules);
  const TemplateLibrary library = load_templates_file(config.templates_path);
  const std::size_t jobs = config.effective_jobs();

  const auto sequences = sample(graph, library, config);
  auto conversations = verbalize_all(sequences, library, graph, jobs);
  contextualize_all(conversations, library, graph, *make_determiner(config), jobs);
  rewrite_all(conversations, graph, *make_rewriter(config), jobs);
  return finalize(std::move(conversations), config);
}

void write_outputs(const EmitResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  write_file_atomic((dir / "dataset.jsonl").string(), write_dataset(result.conversations));

  std::map<std::string, const Conversation*> by_id;
  for (const auto& c : result.conversations) by_id[c.id] = &c;
  auto subset = [&](const std::vector<std::string>& ids) {
    std::vector<Conversation> out;
    for (const auto& id : ids) out.push_back(*by_id.at(id));
    return write_dataset(out);
  };
  write_file_atomic((dir / "train.jsonl").string(), subset(result.splits.train));
  write_file_atomic((dir / "dev.jsonl").string(), subset(result.splits.dev));
  write_file_atomic((dir / "test.jsonl").string(), subset(result.splits.test));
  write_file_atomic((dir / "splits.json").string(), to_json(result.splits).dump(2) + "\n");
}

}  // namespace kgconv
