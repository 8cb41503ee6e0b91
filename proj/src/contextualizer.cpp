#include "kgconv/contextualizer.hpp"

#include <algorithm>
#include <semaphore>
#include <stdexcept>

#include "kgconv/error.hpp"
#include "kgconv/http_client.hpp"
#include "kgconv/lexicon.hpp"
#include "kgconv/text.hpp"

namespace kgconv {

// ---------------------------------------------------------------------------
// Referring expressions

const MentionState::Record* MentionState::find(const EntityId& id) const {
  auto it = records_.find(id);
  return it == records_.end() ? nullptr : &it->second;
}

void MentionState::note(const EntityId& id, const std::string& label) {
  auto [it, inserted] = records_.try_emplace(id);
  if (inserted) {
    it->second.first_reference = label;
  } else {
    it->second.prior_mentions.push_back(label);
  }
}

std::vector<std::string> MentionState::violations() const {
  std::vector<std::string> out;
  for (const auto& [id, rec] : records_) {
    for (const auto& m : rec.prior_mentions) {
      if (rec.first_reference.find(m) == std::string::npos)
        out.push_back(id.str() + ": '" + m + "' is not part of '" + rec.first_reference + "'");
    }
  }
  return out;
}

std::vector<std::string> first_reference_candidates(const Entity& entity) {
  std::vector<std::string> out{entity.preferred_label};
  for (const auto& l : entity.alt_labels) {
    if (l.find(entity.preferred_label) != std::string::npos) out.push_back(l);
  }
  return out;
}

std::vector<std::string> later_reference_candidates(const Entity& entity,
                                                    const std::string& first_reference) {
  std::vector<std::string> pool{entity.preferred_label};
  pool.insert(pool.end(), entity.alt_labels.begin(), entity.alt_labels.end());
  if (entity.is_person() && entity.surname) pool.push_back(*entity.surname);
  std::vector<std::string> out;
  for (auto& l : pool) {
    if (l.empty() || first_reference.find(l) == std::string::npos) continue;
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

std::string select_reference(const Entity& entity, MentionState& state, Rng& rng) {
  std::vector<std::string> candidates;
  if (const auto* rec = state.find(entity.id)) {
    candidates = later_reference_candidates(entity, rec->first_reference);
  } else {
    candidates = first_reference_candidates(entity);
  }
  if (candidates.empty()) candidates.push_back(entity.preferred_label);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::string label = candidates[pick(rng)];
  state.note(entity.id, label);
  return label;
}

// ---------------------------------------------------------------------------
// Determiners

DeterminerOracle::DeterminerOracle(double threshold) : threshold_(threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("determiner threshold must lie in [0, 1]");
}

LexiconDeterminer::Patterns LexiconDeterminer::default_patterns() {
  Patterns p;
  p.prefixes = {"United ",          "Republic of ",     "Kingdom of ",      "Democratic Republic",
                "People's Republic", "Federal Republic", "Federated States", "State of ",
                "Commonwealth of ",  "Principality of ",  "Grand Duchy of ",  "Sultanate of ",
                "Islamic Republic",  "Union of ",         "Holy See"};
  p.suffixes = {" Republic", " Kingdom", " Islands", " Emirates", " Federation",
                " Confederation", " Union", " Empire", " Church", " Way",
                " Ocean", " Sea", " River", " Mountains"};
  p.exact = {"Netherlands", "Philippines", "Bahamas", "Gambia", "Maldives", "Vatican",
             "Comoros",     "Seychelles", "Sun",     "Moon"};
  return p;
}

LexiconDeterminer::LexiconDeterminer(Patterns patterns, double threshold)
    : DeterminerOracle(threshold), patterns_(std::move(patterns)) {}

double LexiconDeterminer::probability_of_the(std::string_view, std::string_view label) const {
  for (const auto& e : patterns_.exact)
    if (label == e) return 1.0;
  for (const auto& p : patterns_.prefixes)
    if (label.starts_with(p)) return 1.0;
  for (const auto& s : patterns_.suffixes)
    if (label.ends_with(s)) return 1.0;
  return 0.0;
}

struct HttpDeterminerOracle::Impl {
  explicit Impl(std::size_t max_in_flight)
      : slots(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(max_in_flight, 1, 64))) {}
  mutable std::counting_semaphore<64> slots;
};

HttpDeterminerOracle::HttpDeterminerOracle(std::string url, double threshold,
                                           std::size_t max_in_flight)
    : DeterminerOracle(threshold), url_(std::move(url)), impl_(std::make_unique<Impl>(max_in_flight)) {}

HttpDeterminerOracle::~HttpDeterminerOracle() = default;

double HttpDeterminerOracle::probability_of_the(std::string_view masked_text,
                                                std::string_view) const {
  Json request{{"text", std::string(masked_text)}, {"candidates", Json::array({"the"})}};
  impl_->slots.acquire();
  Json reply;
  try {
    reply = http::post_json(url_, request);
  } catch (...) {
    impl_->slots.release();
    throw;
  }
  impl_->slots.release();
  const auto probs = reply.find("probabilities");
  if (probs == reply.end() || !probs->is_object() || !probs->contains("the") ||
      !probs->at("the").is_number()) {
    throw ServiceError("malformed_response", url_ + ": missing probabilities.the");
  }
  return probs->at("the").get<double>();
}

FailoverDeterminer::FailoverDeterminer(std::unique_ptr<DeterminerOracle> primary,
                                       std::unique_ptr<DeterminerOracle> fallback)
    : DeterminerOracle(primary->threshold()),
      primary_(std::move(primary)),
      fallback_(std::move(fallback)) {}

double FailoverDeterminer::probability_of_the(std::string_view masked_text,
                                              std::string_view label) const {
  if (!primary_down_.load()) {
    try {
      return primary_->probability_of_the(masked_text, label);
    } catch (const ServiceError& e) {
      if (e.kind() != "service_unreachable") throw;
      primary_down_.store(true);
    }
  }
  // The fallback scores on its own scale; rescale onto this oracle's threshold.
  const double p = fallback_->probability_of_the(masked_text, label);
  return p >= fallback_->threshold() ? 1.0 : 0.0;
}

namespace {

bool blocks_article(const std::string& prev) {
  static const std::set<std::string, std::less<>> kPossessives{"his", "her", "its", "their",
                                                               "my", "your", "our", "this",
                                                               "these", "that", "those"};
  return lexicon::is_article(prev) || kPossessives.count(prev) || prev.ends_with("'s");
}

Determiner decide_at(std::string_view context, std::size_t pos, std::string_view label,
                     const DeterminerOracle& oracle) {
  if (blocks_article(text::lower(text::word_before(context, pos)))) return Determiner::kNoArticle;
  std::string masked(context.substr(0, pos));
  masked += kMaskToken;
  masked += ' ';
  masked += context.substr(pos);
  return oracle.probability_of_the(masked, label) >= oracle.threshold() ? Determiner::kInsertThe
                                                                       : Determiner::kNoArticle;
}

}  // namespace

Determiner decide_determiner(std::string_view label, std::string_view sentence_context,
                             const DeterminerOracle& oracle) {
  const auto pos = text::find_word(sentence_context, label);
  if (pos == std::string_view::npos)
    throw std::invalid_argument("label '" + std::string(label) + "' not in context");
  return decide_at(sentence_context, pos, label, oracle);
}

// ---------------------------------------------------------------------------
// Tense

bool past_tense_trigger(const Triple& triple, const KnowledgeGraph& graph) {
  if (triple.qualifiers.end_time) return true;
  if (const auto* s = graph.find_entity(triple.subject); s && s->is_dead) return true;
  if (const auto* o = as_entity(triple.object)) {
    if (const auto* e = graph.find_entity(*o); e && e->is_dead) return true;
  }
  return false;
}

namespace {

// Converts the first finite verb outside `protect`; shifts the mention when
// the edit happens before it.
void shift_to_past(std::string& s, Mention& protect) {
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !text::is_word_char(s[i])) ++i;
    const std::size_t b = i;
    while (i < s.size() && text::is_word_char(s[i])) ++i;
    if (b == i) break;
    if (b >= protect.pos && b < protect.pos + protect.len) continue;
    const std::string w = text::lower(std::string_view(s).substr(b, i - b));
    if (lexicon::is_past_form(w)) return;
    const auto& table = lexicon::present_to_past();
    auto it = table.find(w);
    if (it == table.end()) continue;
    std::string past = it->second;
    if (text::starts_upper(std::string_view(s).substr(b))) past = text::capitalize_first(past);
    s.replace(b, i - b, past);
    if (b < protect.pos) protect.pos = protect.pos + past.size() - (i - b);
    return;
  }
}

}  // namespace

std::string apply_tense(std::string_view question, Tense template_tense, const Triple& triple,
                        const KnowledgeGraph& graph, std::optional<Mention> protect) {
  std::string out(question);
  if (template_tense != Tense::kPresent || !past_tense_trigger(triple, graph)) return out;
  Mention m = protect.value_or(Mention{out.size(), 0});
  shift_to_past(out, m);
  return out;
}

// ---------------------------------------------------------------------------
// Pronouns

Gender infer_gender(const Entity& entity) {
  if (!entity.has_type(kHumanClass) && !entity.has_type(kFictionalCharacterClass))
    return Gender::kNeutral;
  if (entity.gender == Gender::kMale || entity.gender == Gender::kFemale) return entity.gender;
  return Gender::kUnknown;
}

Gender infer_gender(const Node& node, const KnowledgeGraph& graph) {
  if (const auto* id = as_entity(node)) {
    if (const auto* e = graph.find_entity(*id)) return infer_gender(*e);
    return Gender::kUnknown;
  }
  return Gender::kNeutral;
}

namespace {

const char* pronoun_for(Gender g, char form) {
  // form: 's' subject, 'o' object, 'p' possessive
  switch (g) {
    case Gender::kMale: return form == 's' ? "he" : form == 'o' ? "him" : "his";
    case Gender::kFemale: return form == 's' ? "she" : "her";
    default: return form == 'p' ? "its" : "it";
  }
}

std::size_t possessive_marker_length(std::string_view question, Mention m) {
  const std::string_view rest = question.substr(m.pos + m.len);
  auto ends_word = [&](std::size_t k) {
    return k >= rest.size() || !std::isalnum(static_cast<unsigned char>(rest[k]));
  };
  if (rest.starts_with("'s") && ends_word(2)) return 2;
  if (rest.starts_with("\xE2\x80\x99s") && ends_word(4)) return 4;
  if (rest.starts_with("'") && ends_word(1) && m.len > 0) {
    const char last = question[m.pos + m.len - 1];
    if (last == 's' || last == 'S') return 1;
  }
  return 0;
}

}  // namespace

std::optional<std::string> replace_with_pronoun(std::string_view question, Mention mention,
                                                Gender gender, Mention* replaced) {
  if (gender == Gender::kUnknown) return std::nullopt;
  if (mention.pos + mention.len > question.size() || mention.len == 0) return std::nullopt;
  const std::string prev = text::lower(text::word_before(question, mention.pos));
  if (prev == "a" || prev == "of") return std::nullopt;

  std::size_t span = mention.len;
  char form = 's';
  if (const std::size_t marker = possessive_marker_length(question, mention); marker > 0) {
    form = 'p';
    span += marker;
  } else if (((lexicon::is_preposition(prev) || lexicon::is_conjunction(prev)) && prev != "that") ||
             lexicon::is_lexical_verb(prev)) {
    form = 'o';
  }

  std::string pronoun = pronoun_for(gender, form);
  if (text::trim(question.substr(0, mention.pos)).empty()) pronoun = text::capitalize_first(pronoun);
  std::string out(question);
  out.replace(mention.pos, span, pronoun);
  if (replaced) *replaced = Mention{mention.pos, pronoun.size()};
  return out;
}

std::optional<std::string> pronominalize(std::string_view question, Mention mention,
                                         const Triple& triple, const Triple* prev,
                                         const KnowledgeGraph& graph, Mention* replaced) {
  if (!prev) return std::nullopt;
  const EntityId& subject = triple.subject;
  const auto* prev_object = as_entity(prev->object);
  const bool subject_was_subject = prev->subject == subject;
  const bool subject_was_object = prev_object && *prev_object == subject;
  if (!subject_was_subject && !subject_was_object) return std::nullopt;

  const Gender gender = infer_gender(graph.entity(subject));
  if (gender == Gender::kUnknown) return std::nullopt;
  const Node other = subject_was_subject ? prev->object : Node{prev->subject};
  const Gender other_gender = infer_gender(other, graph);
  if (other_gender == Gender::kUnknown || other_gender == gender) return std::nullopt;

  return replace_with_pronoun(question, mention, gender, replaced);
}

// ---------------------------------------------------------------------------
// Contextualizer

ContextualizedQuestion Contextualizer::contextualize(const Template& tpl, const Triple& triple,
                                                     const Triple* prev,
                                                     const std::string& reference) const {
  ContextualizedQuestion out;
  const Instantiation ooc = instantiate(tpl, triple, graph_);
  out.ooc = ooc.question;

  const Instantiation inst = instantiate(tpl, triple, graph_, reference);
  std::string s = inst.question;
  Mention m{inst.mention_pos, inst.mention_len};

  const Entity& subject = graph_.entity(triple.subject);
  if (infer_gender(subject) == Gender::kNeutral &&
      decide_at(s, m.pos, reference, determiner_) == Determiner::kInsertThe) {
    s.insert(m.pos, m.pos == 0 ? "The " : "the ");
    m.len += 4;
  }

  if (tpl.tense == Tense::kPresent && past_tense_trigger(triple, graph_)) shift_to_past(s, m);

  Mention replaced;
  if (auto r = pronominalize(s, m, triple, prev, graph_, &replaced)) {
    s = std::move(*r);
    m = replaced;
  }

  if (s != out.ooc) {
    out.ic = std::move(s);
    out.mention = m;
  } else {
    out.mention = Mention{ooc.mention_pos, ooc.mention_len};
  }
  return out;
}

}  // namespace kgconv
