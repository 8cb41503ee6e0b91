#include "kgconv/cqg_eval.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "kgconv/error.hpp"
#include "kgconv/text.hpp"

namespace kgconv {

const char* to_string(ContextFormat f) {
  switch (f) {
    case ContextFormat::kEmpty: return "empty";
    case ContextFormat::kNl: return "nl";
    case ContextFormat::kKg: return "kg";
    case ContextFormat::kNlPlusKg: return "nl+kg";
  }
  return "empty";
}

ContextFormat context_format_from_string(std::string_view s) {
  if (s == "empty") return ContextFormat::kEmpty;
  if (s == "nl") return ContextFormat::kNl;
  if (s == "kg") return ContextFormat::kKg;
  if (s == "nl+kg") return ContextFormat::kNlPlusKg;
  throw std::invalid_argument("unknown context format '" + std::string(s) + "'");
}

std::string serialize_triple(const TurnTriple& t) {
  return "<" + t.s.label + " | " + (t.p.inverse ? "-" : "") + t.p.label + " | " + t.o.label + ">";
}

std::string serialize_context(std::span<const Turn> history, ContextFormat format) {
  std::vector<std::string> parts;
  for (const Turn& turn : history) {
    const std::string question = turn.paraphrases.empty() ? "" : turn.paraphrases.front().ooc;
    const std::string nl = "Q: " + question + " A: " + turn.answer;
    switch (format) {
      case ContextFormat::kEmpty: break;
      case ContextFormat::kNl: parts.push_back(nl); break;
      case ContextFormat::kKg: parts.push_back(serialize_triple(turn.triple)); break;
      case ContextFormat::kNlPlusKg: parts.push_back(serialize_triple(turn.triple) + " " + nl); break;
    }
  }
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::vector<std::string> gleu_tokens(std::string_view s) { return text::tokenize(s); }

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts ngrams(const std::vector<std::string>& tokens, std::size_t max_n, std::size_t& total) {
  NgramCounts counts;
  total = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                        tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
      ++total;
    }
  }
  return counts;
}

}  // namespace

double gleu(std::string_view hypothesis, std::span<const std::string> references, std::size_t max_n) {
  if (references.empty()) throw std::invalid_argument("gleu needs at least one reference");
  const auto hyp_tokens = gleu_tokens(hypothesis);
  if (hyp_tokens.empty() || max_n == 0) return 0.0;
  std::size_t hyp_total = 0;
  const NgramCounts hyp = ngrams(hyp_tokens, max_n, hyp_total);

  double best = 0.0;
  for (const auto& ref : references) {
    std::size_t ref_total = 0;
    const NgramCounts r = ngrams(gleu_tokens(ref), max_n, ref_total);
    if (ref_total == 0) continue;
    std::size_t matches = 0;
    for (const auto& [gram, count] : hyp) {
      if (auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
    }
    const double precision = static_cast<double>(matches) / static_cast<double>(hyp_total);
    const double recall = static_cast<double>(matches) / static_cast<double>(ref_total);
    best = std::max(best, std::min(precision, recall));
  }
  return best;
}

std::string turn_id(const Conversation& c, std::size_t turn_index) {
  return c.id + ":" + std::to_string(turn_index);
}

Json to_json(const EvalRecord& r) {
  Json triple{{"s", r.input_triple.s.label},
              {"p", (r.input_triple.p.inverse ? "-" : "") + r.input_triple.p.label},
              {"o", r.input_triple.o.label}};
  return Json{{"turn_id", r.turn_id},   {"theme", r.theme},
              {"triple", triple},       {"context", r.context},
              {"references", r.references}, {"hypothesis", r.hypothesis}};
}

std::vector<EvalRecord> build_records(std::span<const Conversation> dataset, ContextFormat format) {
  std::vector<EvalRecord> out;
  for (const auto& c : dataset) {
    for (std::size_t i = 0; i < c.turns.size(); ++i) {
      const Turn& turn = c.turns[i];
      EvalRecord r;
      r.turn_id = turn_id(c, i);
      r.theme = c.theme;
      r.input_triple = turn.triple;
      r.context = serialize_context(std::span(c.turns).first(i), format);
      for (const auto& v : turn.paraphrases) {
        r.references.push_back(v.ooc);
        if (v.ic) r.references.push_back(*v.ic);
        if (v.sic) r.references.push_back(*v.sic);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  for_each_jsonl(in, [&](const Json& j, std::size_t) {
    out.push_back({j.at("turn_id").get<std::string>(), j.at("hypothesis").get<std::string>()});
  });
  return out;
}

std::vector<Prediction> read_predictions_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot read " + path);
  return read_predictions(in);
}

Json EvalReport::to_json() const {
  Json per_theme = Json::object();
  for (const auto& [theme, s] : themes) per_theme[theme] = {{"mean", s.mean}, {"count", s.count}};
  return Json{{"scorer", scorer},
              {"format", kgconv::to_string(format)},
              {"themes", per_theme},
              {"macro", macro},
              {"seen_macro", seen_macro ? Json(*seen_macro) : Json(nullptr)},
              {"unseen_macro", unseen_macro ? Json(*unseen_macro) : Json(nullptr)}};
}

EvalReport evaluate(std::span<const Prediction> predictions, std::span<const Conversation> dataset,
                    ContextFormat format, const Scorer& scorer,
                    const std::set<std::string>& unseen_themes) {
  std::map<std::string, EvalRecord> records;
  for (auto& r : build_records(dataset, format)) {
    auto id = r.turn_id;
    records.emplace(std::move(id), std::move(r));
  }

  // Scores keyed by turn id so the sums do not depend on prediction order.
  std::map<std::string, std::map<std::string, double>> by_theme;
  for (const auto& p : predictions) {
    auto it = records.find(p.turn_id);
    if (it == records.end()) throw Error("unknown_turn_id", "unknown turn id " + p.turn_id);
    auto& scores = by_theme[it->second.theme];
    if (scores.count(p.turn_id))
      throw Error("duplicate_prediction", "more than one prediction for " + p.turn_id);
    scores[p.turn_id] = scorer.score(p.hypothesis, it->second.references);
  }

  EvalReport report;
  report.scorer = scorer.name();
  report.format = format;
  auto mean_of = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  std::vector<double> all, seen, unseen;
  for (const auto& [theme, scores] : by_theme) {
    std::vector<double> values;
    for (const auto& [id, s] : scores) values.push_back(s);
    const double m = *mean_of(values);
    report.themes[theme] = {m, values.size()};
    all.push_back(m);
    (unseen_themes.count(theme) ? unseen : seen).push_back(m);
  }
  report.macro = mean_of(all).value_or(0.0);
  report.seen_macro = mean_of(seen);
  report.unseen_macro = mean_of(unseen);
  return report;
}

}  // namespace kgconv
