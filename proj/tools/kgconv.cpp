// kgconv: builds conversational question datasets from a knowledge graph.
//
// Stages (each reads the previous stage's file):
//   ingest -> sample -> verbalize -> contextualize -> rewrite -> emit
// emit without --in runs every stage from the raw graph.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgconv/cqg_eval.hpp"
#include "kgconv/dataset_io.hpp"
#include "kgconv/error.hpp"
#include "kgconv/jsonl.hpp"
#include "kgconv/pipeline.hpp"
#include "kgconv/template_engine.hpp"

namespace {

using namespace kgconv;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> kg;
  std::optional<std::string> templates;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> per_root;
  std::optional<std::size_t> min_len;
  std::optional<std::size_t> max_len;
  std::optional<std::string> rewriter_url;
  std::optional<std::string> determiner_url;
  std::optional<std::vector<std::string>> unseen_themes;
  std::optional<std::vector<std::string>> unseen_properties;
  std::optional<std::vector<double>> split;
  std::optional<std::size_t> jobs;
  std::optional<std::string> rules;
  std::string format = "empty";
  std::optional<std::string> splits;
  std::optional<std::string> predictions;
  std::optional<std::string> records;
  std::size_t min_support = 5;

  PipelineConfig pipeline() const {
    PipelineConfig c = config ? PipelineConfig::from_file(*config) : PipelineConfig{};
    if (kg) c.kg_path = *kg;
    if (templates) c.templates_path = *templates;
    if (out) c.out_path = *out;
    if (seed) c.seed = *seed;
    if (per_root) c.walk.per_root = *per_root;
    if (min_len) c.walk.min_len = *min_len;
    if (max_len) c.walk.max_len = *max_len;
    if (rewriter_url) c.rewriter_url = *rewriter_url;
    if (determiner_url) c.determiner_url = *determiner_url;
    if (unseen_themes) c.unseen_themes = {unseen_themes->begin(), unseen_themes->end()};
    if (unseen_properties) c.unseen_properties = {unseen_properties->begin(), unseen_properties->end()};
    if (split) {
      if (split->size() != 3) throw Error("config_error", "--split needs three ratios");
      c.ratios = {(*split)[0], (*split)[1], (*split)[2]};
    }
    if (jobs) c.jobs = *jobs;
    if (rules) c.property_rules = PropertyRules::from_json_file(*rules);
    return c;
  }
};

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error("config_error", std::string(flag) + " is required");
  return value;
}

std::string require(const std::optional<std::string>& value, const char* flag) {
  return require(value.value_or(""), flag);
}

void write_or_print(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file_atomic(*path, content);
  } else {
    std::cout << content;
  }
}

// ---------------------------------------------------------------------------
// Subcommands

void run_ingest(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const KnowledgeGraph graph = ingest(load_graph_file(require(c.kg_path, "--kg")), c.property_rules);
  std::ostringstream out;
  save_graph(graph, out);
  write_file_atomic(require(c.out_path, "--out"), out.str());
}

void run_sample(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const KnowledgeGraph graph = load_graph_file(require(c.kg_path, "--kg"));
  const TemplateLibrary library = load_templates_file(require(c.templates_path, "--templates"));
  write_file_atomic(require(c.out_path, "--out"), write_sequences(sample(graph, library, c)));
}

void run_verbalize(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const KnowledgeGraph graph = load_graph_file(require(c.kg_path, "--kg"));
  const TemplateLibrary library = load_templates_file(require(c.templates_path, "--templates"));
  const auto sequences = read_sequences_file(require(f.in, "--in"));
  const auto conversations = verbalize_all(sequences, library, graph, c.effective_jobs());
  write_file_atomic(require(c.out_path, "--out"), write_dataset(conversations, true));
}

void run_contextualize(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const KnowledgeGraph graph = load_graph_file(require(c.kg_path, "--kg"));
  const TemplateLibrary library = load_templates_file(require(c.templates_path, "--templates"));
  auto conversations = read_dataset_file(require(f.in, "--in"));
  contextualize_all(conversations, library, graph, *make_determiner(c), c.effective_jobs());
  write_file_atomic(require(c.out_path, "--out"), write_dataset(conversations, true));
}

void run_rewrite(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const KnowledgeGraph graph = load_graph_file(require(c.kg_path, "--kg"));
  auto conversations = read_dataset_file(require(f.in, "--in"));
  rewrite_all(conversations, graph, *make_rewriter(c), c.effective_jobs());
  write_file_atomic(require(c.out_path, "--out"), write_dataset(conversations, true));
}

void run_emit(const Flags& f) {
  const PipelineConfig c = f.pipeline();
  const std::string out_dir = require(c.out_path, "--out");
  EmitResult result = f.in ? finalize(read_dataset_file(*f.in), c) : run_pipeline(c);
  write_outputs(result, out_dir);
}

void run_stats(const Flags& f) {
  const auto conversations = read_dataset_file(require(f.in, "--in"));
  std::optional<DatasetSplits> splits;
  if (f.splits) splits = splits_from_json(Json::parse(read_file(*f.splits)));
  const StatsReport report = stats(conversations, splits ? &*splits : nullptr);
  write_or_print(f.out, report.to_json().dump(2) + "\n");
}

void run_evaluate(const Flags& f) {
  const auto dataset = read_dataset_file(require(f.in, "--in"));
  const ContextFormat format = context_format_from_string(f.format);
  if (f.records) {
    std::string lines;
    for (const auto& r : build_records(dataset, format)) lines += to_json(r).dump() + "\n";
    write_file_atomic(*f.records, lines);
  }
  if (!f.predictions) return;
  const auto predictions = read_predictions_file(*f.predictions);
  std::set<std::string> unseen{"space object", "taxon"};
  if (f.unseen_themes) unseen = {f.unseen_themes->begin(), f.unseen_themes->end()};
  const EvalReport report = evaluate(predictions, dataset, format, GleuScorer{}, unseen);
  write_or_print(f.out, report.to_json().dump(2) + "\n");
}

// Input lines: {"triple": <graph triple>, "question": "..."}.
void run_extract_templates(const Flags& f) {
  const KnowledgeGraph graph = load_graph_file(require(f.kg, "--kg"));
  std::ifstream in(require(f.in, "--in"));
  if (!in) throw Error("io_error", "cannot read " + *f.in);
  std::vector<Template> templates;
  std::size_t skipped = 0;
  for_each_jsonl(in, [&](const Json& j, std::size_t line) {
    const Triple t = triple_from_json(j.at("triple"));
    char id[32];
    std::snprintf(id, sizeof id, "sq%05zu", templates.size() + 1);
    try {
      templates.push_back(template_from_qa_pair(t, j.at("question").get<std::string>(), graph, id));
    } catch (const TemplateError& e) {
      ++skipped;
      std::cerr << "line " << line << ": skipped (" << e.kind() << ")\n";
    } catch (const UnknownEntityError& e) {
      ++skipped;
      std::cerr << "line " << line << ": skipped (" << e.kind() << ")\n";
    }
  });
  std::ostringstream out;
  save_templates(templates, out);
  write_file_atomic(require(f.out, "--out"), out.str());
  std::cerr << templates.size() << " templates, " << skipped << " skipped\n";
}

void run_cluster_conditions(const Flags& f) {
  const KnowledgeGraph graph = load_graph_file(require(f.kg, "--kg"));
  const TemplateLibrary library = load_templates_file(require(f.templates, "--templates"));
  std::vector<ApplicabilityCondition> conditions;
  for (const auto& t : library.templates()) conditions.push_back(t.condition);
  const auto clustered = cluster_conditions(conditions, graph.triples(), graph, f.min_support);
  std::string lines;
  for (const auto& c : clustered) {
    Json st = Json::array(), ot = Json::array();
    for (const auto& s : c.subject_types) st.push_back(s.str());
    for (const auto& o : c.object_types) ot.push_back(o.str());
    lines += Json{{"property", c.property.id},
                  {"inverse", c.property.inverse},
                  {"subject_types", st},
                  {"object_types", ot},
                  {"support", support(c, graph.triples(), graph)}}
                 .dump() +
             "\n";
  }
  write_or_print(f.out, lines);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversational question dataset builder"};
  app.require_subcommand(1);
  Flags f;

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const Flags&);
  };
  const std::vector<Command> commands{
      {"ingest", "filter properties and add reverse triples", run_ingest},
      {"sample", "sample triple sequences for eligible roots", run_sample},
      {"verbalize", "instantiate templates into OOC questions", run_verbalize},
      {"contextualize", "add rule-based in-context variants", run_contextualize},
      {"rewrite", "add rewritten in-context variants", run_rewrite},
      {"emit", "run the whole pipeline and write dataset and splits", run_emit},
      {"stats", "summary counts of a dataset", run_stats},
      {"evaluate", "score next-question predictions with GLEU", run_evaluate},
      {"extract-templates", "derive templates from question/triple pairs", run_extract_templates},
      {"cluster-conditions", "merge template applicability conditions", run_cluster_conditions},
  };

  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", f.config, "pipeline config (JSON)");
    sub->add_option("--kg", f.kg, "knowledge graph (JSONL)");
    sub->add_option("--templates", f.templates, "template library (JSONL)");
    sub->add_option("--in", f.in, "input file from the previous stage");
    sub->add_option("--out", f.out, "output file (directory for emit)");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--per-root", f.per_root, "conversations per root");
    sub->add_option("--min-len", f.min_len, "minimum turns");
    sub->add_option("--max-len", f.max_len, "maximum turns");
    sub->add_option("--rewriter-url", f.rewriter_url, "question rewriting service");
    sub->add_option("--determiner-url", f.determiner_url, "masked LM determiner service");
    sub->add_option("--unseen-themes", f.unseen_themes, "themes kept out of train/dev")->delimiter(',');
    sub->add_option("--unseen-properties", f.unseen_properties, "properties kept out of train/dev")
        ->delimiter(',');
    sub->add_option("--split", f.split, "train,dev,test ratios")->delimiter(',');
    sub->add_option("--jobs", f.jobs, "worker threads");
    sub->add_option("--rules", f.rules, "property filtering rules (JSON)");
    sub->add_option("--format", f.format, "context format")
        ->check(CLI::IsMember({"empty", "nl", "kg", "nl+kg"}));
    sub->add_option("--splits", f.splits, "splits.json written by emit");
    sub->add_option("--predictions", f.predictions, "predictions (JSONL)");
    sub->add_option("--records", f.records, "write evaluation records (JSONL)");
    sub->add_option("--min-support", f.min_support, "minimum condition support");
  }

  CLI11_PARSE(app, argc, argv);

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string stage = chosen->get_name();
  try {
    for (const auto& cmd : commands) {
      if (stage == cmd.name) cmd.run(f);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << Json{{"error", {{"stage", stage}, {"kind", e.kind()}, {"message", e.what()}}}}.dump()
              << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << Json{{"error", {{"stage", stage}, {"kind", "invalid_argument"}, {"message", e.what()}}}}
                     .dump()
              << "\n";
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", {{"stage", stage}, {"kind", "internal"}, {"message", e.what()}}}}.dump()
              << "\n";
  }
  return 1;
}
