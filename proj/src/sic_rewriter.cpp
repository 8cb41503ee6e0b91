#include "kgconv/sic_rewriter.hpp"

#include <algorithm>
#include <cctype>
#include <semaphore>
#include <stdexcept>
#include <tuple>

#include "kgconv/error.hpp"
#include "kgconv/http_client.hpp"
#include "kgconv/lexicon.hpp"
#include "kgconv/text.hpp"

namespace kgconv {

const char* to_string(RewriteCategory c) {
  switch (c) {
    case RewriteCategory::kPronoun: return "pronoun";
    case RewriteCategory::kDemonstrative: return "demonstrative";
    case RewriteCategory::kEllipsis: return "ellipsis";
    case RewriteCategory::kNone: return "none";
  }
  return "none";
}

RewriteCategory rewrite_category_from_string(const std::string& s) {
  const std::string l = text::lower(s);
  if (l == "pronoun") return RewriteCategory::kPronoun;
  if (l == "demonstrative") return RewriteCategory::kDemonstrative;
  if (l == "ellipsis") return RewriteCategory::kEllipsis;
  if (l == "none") return RewriteCategory::kNone;
  throw Error("parse_error", "unknown rewrite category '" + s + "'");
}

RewriterClient::RewriterClient(std::size_t n_best) : n_best_(n_best) {
  if (n_best == 0) throw std::invalid_argument("n_best must be at least 1");
}

// ---------------------------------------------------------------------------
// Service client

struct HttpRewriterClient::Impl {
  explicit Impl(std::size_t max_in_flight)
      : slots(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(max_in_flight, 1, 64))) {}
  std::counting_semaphore<64> slots;
};

HttpRewriterClient::HttpRewriterClient(std::string url, std::size_t n_best,
                                       std::size_t max_in_flight)
    : RewriterClient(n_best), url_(std::move(url)), impl_(std::make_unique<Impl>(max_in_flight)) {}

HttpRewriterClient::~HttpRewriterClient() = default;

std::vector<RewriteCandidate> HttpRewriterClient::rewrite(const RewriteRequest& request) const {
  Json history = Json::array();
  for (const auto& qa : request.history) history.push_back({{"q", qa.question}, {"a", qa.answer}});
  const Json body{{"question", request.question}, {"history", history}, {"n_best", n_best()}};

  impl_->slots.acquire();
  Json reply;
  try {
    reply = http::post_json(url_, body);
  } catch (...) {
    impl_->slots.release();
    throw;
  }
  impl_->slots.release();

  auto malformed = [&](const std::string& why) {
    return ServiceError("malformed_response", url_ + ": " + why);
  };
  if (!reply.is_object() || !reply.contains("candidates") || !reply["candidates"].is_array())
    throw malformed("missing candidates array");
  std::vector<RewriteCandidate> out;
  for (const auto& c : reply["candidates"]) {
    if (!c.is_object() || !c.contains("text") || !c["text"].is_string() || !c.contains("score") ||
        !c["score"].is_number())
      throw malformed("candidate needs string text and numeric score");
    out.push_back({c["text"].get<std::string>(), c["score"].get<double>(), RewriteCategory::kNone});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Offline generator

namespace {

bool is_function_word(std::string_view w) {
  return lexicon::is_preposition(w) || lexicon::is_auxiliary(w) || lexicon::is_article(w) ||
         lexicon::is_conjunction(w);
}

std::optional<std::string> demonstrative_rewrite(const std::string& q, Mention m,
                                                 const std::string& head) {
  if (head.empty()) return std::nullopt;
  std::string phrase = "this " + head;
  // A possessive pronoun mention becomes "this <head>'s".
  const std::string said = text::lower(std::string_view(q).substr(m.pos, m.len));
  const bool word_follows = m.pos + m.len + 1 < q.size() && q[m.pos + m.len] == ' ' &&
                            std::isalpha(static_cast<unsigned char>(q[m.pos + m.len + 1]));
  if (said == "his" || said == "its" || said == "their" || (said == "her" && word_follows))
    phrase += "'s";
  std::size_t start = m.pos;
  // "the X" becomes "this X", not "the this X".
  if (const auto b = text::word_before_pos(q, m.pos);
      b != std::string::npos && text::lower(text::word_before(q, m.pos)) == "the") {
    start = b;
  }
  if (text::trim(std::string_view(q).substr(0, start)).empty()) phrase = text::capitalize_first(phrase);
  std::string out = q;
  out.replace(start, m.pos + m.len - start, phrase);
  return out;
}

std::optional<std::string> ellipsis_rewrite(const std::string& q, Mention m) {
  std::vector<std::string> prefix = text::words(std::string_view(q).substr(0, m.pos));
  std::size_t stripped = 0;
  while (!prefix.empty() && is_function_word(text::lower(prefix.back()))) {
    prefix.pop_back();
    ++stripped;
  }
  if (stripped == 0 || prefix.size() < 2) return std::nullopt;
  // Cut the original string so inner punctuation and casing survive.
  std::size_t end = 0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < q.size() && seen < prefix.size();) {
    while (i < q.size() && !text::is_word_char(q[i])) ++i;
    while (i < q.size() && text::is_word_char(q[i])) ++i;
    ++seen;
    end = i;
  }
  return q.substr(0, end) + "?";
}

}  // namespace

std::vector<RewriteCandidate> FallbackRewriter::rewrite(const RewriteRequest& request) const {
  std::vector<RewriteCandidate> out;
  if (!request.mention) return out;
  const Mention m = *request.mention;
  const std::string& q = request.question;
  if (m.pos + m.len > q.size()) return out;

  auto add = [&](std::optional<std::string> text, double score) {
    if (text && *text != q) out.push_back({std::move(*text), score, RewriteCategory::kNone});
  };
  // A mention that already is a pronoun only takes the other two forms.
  if (!is_acceptance_pronoun(text::lower(std::string_view(q).substr(m.pos, m.len))))
    add(replace_with_pronoun(q, m, request.gender), -1.0);
  add(demonstrative_rewrite(q, m, request.type_head), -2.0);
  add(ellipsis_rewrite(q, m), -3.0);
  return out;
}

FailoverRewriter::FailoverRewriter(std::unique_ptr<RewriterClient> primary,
                                   std::unique_ptr<RewriterClient> fallback)
    : RewriterClient(primary->n_best()), primary_(std::move(primary)), fallback_(std::move(fallback)) {}

std::vector<RewriteCandidate> FailoverRewriter::rewrite(const RewriteRequest& request) const {
  if (!primary_down_.load()) {
    try {
      return primary_->rewrite(request);
    } catch (const ServiceError& e) {
      if (e.kind() != "service_unreachable") throw;
      primary_down_.store(true);
    }
  }
  return fallback_->rewrite(request);
}

std::vector<RewriteCandidate> generate_candidates(const RewriteRequest& request,
                                                  const RewriterClient& client) {
  auto out = client.rewrite(request);
  std::stable_sort(out.begin(), out.end(), [](const RewriteCandidate& a, const RewriteCandidate& b) {
    return a.score > b.score;
  });
  if (out.size() > client.n_best()) out.resize(client.n_best());
  for (auto& c : out) c.category = RewriteCategory::kNone;
  return out;
}

// ---------------------------------------------------------------------------
// Classification

AlignmentDistance word_alignment_distance(std::span<const std::string> a,
                                          std::span<const std::string> b) {
  // cost[i][j] = (edits, deletions) to turn a[0..i) into b[0..j).
  using Cost = std::pair<std::size_t, std::size_t>;
  const std::size_t n = a.size(), m = b.size();
  std::vector<Cost> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {j, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {i, i};
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub = a[i - 1] == b[j - 1] ? 0 : 1;
      Cost best{prev[j - 1].first + sub, prev[j - 1].second};
      best = std::min(best, Cost{cur[j - 1].first + 1, cur[j - 1].second});
      best = std::min(best, Cost{prev[j].first + 1, prev[j].second + 1});
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  AlignmentDistance d;
  d.different_words = prev[m].first;
  d.deletions = prev[m].second;
  d.fraction = m == 0 ? 1.0 : static_cast<double>(d.different_words) / static_cast<double>(m);
  return d;
}

bool is_acceptance_pronoun(std::string_view word) {
  static const std::set<std::string, std::less<>> kWords{
      "he",  "him", "it",   "she",   "they",   "his",  "its",
      "her", "their", "them", "hers", "theirs", "there"};
  return kWords.count(word) != 0;
}

namespace {

using Tokens = std::vector<std::string>;

Tokens content_tokens(std::string_view s) {
  Tokens out;
  for (auto& t : text::tokenize(s))
    if (!text::is_punctuation_token(t)) out.push_back(std::move(t));
  return out;
}

// Token spans of each label, longest first.
std::vector<Tokens> label_spans(std::span<const std::string> labels) {
  std::vector<Tokens> spans;
  for (const auto& l : labels) {
    auto t = content_tokens(l);
    if (!t.empty()) spans.push_back(std::move(t));
  }
  std::stable_sort(spans.begin(), spans.end(),
                   [](const Tokens& x, const Tokens& y) { return x.size() > y.size(); });
  return spans;
}

Tokens remove_spans(Tokens tokens, const std::vector<Tokens>& spans) {
  for (const auto& span : spans) {
    Tokens kept;
    std::size_t i = 0;
    while (i < tokens.size()) {
      if (i + span.size() <= tokens.size() &&
          std::equal(span.begin(), span.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) {
        i += span.size();
      } else {
        kept.push_back(tokens[i++]);
      }
    }
    tokens = std::move(kept);
  }
  return tokens;
}

bool contains_span(const Tokens& tokens, const Tokens& span) {
  return std::search(tokens.begin(), tokens.end(), span.begin(), span.end()) != tokens.end();
}

bool pronoun_ok(const Tokens& cand, const Tokens& orig, const std::vector<Tokens>& spans) {
  if (std::none_of(cand.begin(), cand.end(),
                   [](const std::string& w) { return is_acceptance_pronoun(w); }))
    return false;
  const Tokens c = remove_spans(cand, spans);
  const Tokens o = remove_spans(orig, spans);
  const AlignmentDistance d = word_alignment_distance(o, c);
  const std::size_t changed = d.b_side();
  if (changed == 1) return true;
  const double fraction = c.empty() ? 1.0 : static_cast<double>(changed) / static_cast<double>(c.size());
  return fraction < 0.25;
}

bool demonstrative_ok(const Tokens& cand) {
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    if (cand[i] != "this" && cand[i] != "these") continue;
    const std::string& head = cand[i + 1];
    if (head.size() < 3 || is_function_word(head) || lexicon::is_lexical_verb(head)) continue;
    if (std::count(cand.begin(), cand.end(), head) == 1) return true;
  }
  return false;
}

bool ellipsis_ok(const Tokens& cand, const Tokens& orig, const std::vector<Tokens>& spans) {
  if (cand.empty() || cand.size() >= orig.size()) return false;
  if (!std::equal(cand.begin(), cand.end(), orig.begin())) return false;
  return std::none_of(spans.begin(), spans.end(),
                      [&](const Tokens& s) { return contains_span(cand, s); });
}

}  // namespace

RewriteCategory classify_candidate(std::string_view candidate, std::string_view original,
                                   std::span<const std::string> history_labels) {
  const Tokens cand = content_tokens(candidate);
  const Tokens orig = content_tokens(original);
  if (cand.empty() || cand == orig) return RewriteCategory::kNone;
  const auto spans = label_spans(history_labels);
  if (pronoun_ok(cand, orig, spans)) return RewriteCategory::kPronoun;
  if (demonstrative_ok(cand)) return RewriteCategory::kDemonstrative;
  if (ellipsis_ok(cand, orig, spans)) return RewriteCategory::kEllipsis;
  return RewriteCategory::kNone;
}

std::optional<RewriteCandidate> select_rewrite(std::span<const RewriteCandidate> candidates,
                                               const std::set<RewriteCategory>& forbidden) {
  const RewriteCandidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.category == RewriteCategory::kNone || forbidden.count(c.category)) continue;
    if (!best || c.score > best->score) best = &c;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<RewriteCandidate> select_rewrite(std::span<const RewriteCandidate> candidates,
                                               std::optional<RewriteCategory> prev_category) {
  std::set<RewriteCategory> forbidden;
  if (prev_category) forbidden.insert(*prev_category);
  return select_rewrite(candidates, forbidden);
}

}  // namespace kgconv
