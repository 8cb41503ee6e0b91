#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgconv/dataset_io.hpp"

namespace kgconv {

enum class ContextFormat { kEmpty, kNl, kKg, kNlPlusKg };

const char* to_string(ContextFormat f);
// "empty", "nl", "kg" or "nl+kg"; throws std::invalid_argument.
ContextFormat context_format_from_string(std::string_view s);

// "<s | p | o>"; a reverse property is written "-label".
std::string serialize_triple(const TurnTriple& triple);

// Prior turns, oldest first. NL uses the first paraphrase's OOC question:
// "Q: q A: a". KG writes each triple; NL+KG writes "<triple> Q: q A: a" per
// turn. Fragments are joined by single spaces.
std::string serialize_context(std::span<const Turn> history, ContextFormat format);

// Lowercased tokens with punctuation split off.
std::vector<std::string> gleu_tokens(std::string_view s);

// Sentence-level Google-BLEU: n-gram matches over orders 1..max_n divided by
// the hypothesis n-gram count (precision) and by the reference n-gram count
// (recall); the score is the smaller of the two. Several references: the
// best one. An empty hypothesis scores 0. Throws std::invalid_argument when
// references is empty.
double gleu(std::string_view hypothesis, std::span<const std::string> references,
            std::size_t max_n = 4);

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  virtual double score(std::string_view hypothesis, std::span<const std::string> references) const = 0;
};

class GleuScorer : public Scorer {
 public:
  explicit GleuScorer(std::size_t max_n = 4) : max_n_(max_n) {}
  std::string name() const override { return "gleu"; }
  double score(std::string_view hypothesis, std::span<const std::string> references) const override {
    return gleu(hypothesis, references, max_n_);
  }

 private:
  std::size_t max_n_;
};

// "<conversation id>:<zero-based turn index>".
std::string turn_id(const Conversation& c, std::size_t turn_index);

struct EvalRecord {
  std::string turn_id;
  std::string theme;
  TurnTriple input_triple;
  std::string context;
  std::vector<std::string> references;  // every OOC/IC/SIC of the turn
  std::string hypothesis;
};

Json to_json(const EvalRecord& r);

// One record per turn, in dataset order, with empty hypotheses.
std::vector<EvalRecord> build_records(std::span<const Conversation> dataset, ContextFormat format);

struct Prediction {
  std::string turn_id;
  std::string hypothesis;
};

std::vector<Prediction> read_predictions(std::istream& in);
std::vector<Prediction> read_predictions_file(const std::string& path);

struct ThemeScore {
  double mean = 0.0;
  std::size_t count = 0;
};

struct EvalReport {
  std::string scorer;
  ContextFormat format = ContextFormat::kEmpty;
  std::map<std::string, ThemeScore> themes;
  double macro = 0.0;
  std::optional<double> seen_macro;
  std::optional<double> unseen_macro;

  Json to_json() const;
};

// Scores each predicted turn; per-theme means are macro-averaged. Only
// themes with at least one prediction take part. Throws
// Error("unknown_turn_id") and Error("duplicate_prediction").
EvalReport evaluate(std::span<const Prediction> predictions, std::span<const Conversation> dataset,
                    ContextFormat format, const Scorer& scorer,
                    const std::set<std::string>& unseen_themes = {"space object", "taxon"});

}  // namespace kgconv
