#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgconv/contextualizer.hpp"
#include "kgconv/kg_store.hpp"

namespace kgconv {

// Accepted rewrite kinds, in precedence order; kNone means rejected.
enum class RewriteCategory { kPronoun, kDemonstrative, kEllipsis, kNone };

const char* to_string(RewriteCategory c);
RewriteCategory rewrite_category_from_string(const std::string& s);

struct RewriteCandidate {
  std::string text;
  double score = 0.0;  // log-probability, higher is better
  RewriteCategory category = RewriteCategory::kNone;
};

struct QaPair {
  std::string question;
  std::string answer;
};

struct RewriteRequest {
  std::string question;
  std::vector<QaPair> history;  // oldest first
  // What the offline generator needs to know about the subject mention.
  // Services ignore these fields.
  std::optional<Mention> mention;
  Gender gender = Gender::kUnknown;
  std::string type_head;  // e.g. "person", "province"
};

class RewriterClient {
 public:
  explicit RewriterClient(std::size_t n_best = 20);
  virtual ~RewriterClient() = default;

  std::size_t n_best() const { return n_best_; }
  // Raw candidates in any order; category is left at kNone.
  virtual std::vector<RewriteCandidate> rewrite(const RewriteRequest& request) const = 0;

 private:
  std::size_t n_best_;
};

// POSTs {"question","history":[{"q","a"}],"n_best"} and reads
// {"candidates":[{"text","score"}]}.
class HttpRewriterClient : public RewriterClient {
 public:
  explicit HttpRewriterClient(std::string url, std::size_t n_best = 20,
                              std::size_t max_in_flight = 4);
  ~HttpRewriterClient() override;

  std::vector<RewriteCandidate> rewrite(const RewriteRequest& request) const override;

 private:
  struct Impl;
  std::string url_;
  std::unique_ptr<Impl> impl_;
};

// Offline rewrites built from the subject mention: pronoun substitution
// (score -1), "this <type head>" (score -2) and truncation before a
// preposition that introduces the mention (score -3).
class FallbackRewriter : public RewriterClient {
 public:
  explicit FallbackRewriter(std::size_t n_best = 20) : RewriterClient(n_best) {}

  std::vector<RewriteCandidate> rewrite(const RewriteRequest& request) const override;
};

// Uses primary; switches to fallback for good once primary is unreachable.
class FailoverRewriter : public RewriterClient {
 public:
  FailoverRewriter(std::unique_ptr<RewriterClient> primary, std::unique_ptr<RewriterClient> fallback);

  std::vector<RewriteCandidate> rewrite(const RewriteRequest& request) const override;

 private:
  std::unique_ptr<RewriterClient> primary_;
  std::unique_ptr<RewriterClient> fallback_;
  mutable std::atomic<bool> primary_down_{false};
};

// At most client.n_best() candidates, sorted by nonincreasing score.
std::vector<RewriteCandidate> generate_candidates(const RewriteRequest& request,
                                                  const RewriterClient& client);

struct AlignmentDistance {
  std::size_t different_words = 0;  // substitutions + insertions + deletions
  double fraction = 0.0;            // different_words / |b|, 1 when b is empty
  std::size_t deletions = 0;        // words of a with no counterpart in b

  // Words of b that differ from a.
  std::size_t b_side() const { return different_words - deletions; }
};

// Minimal word-level edit alignment turning a into b. Among minimal
// alignments, the one with the fewest deletions is reported.
AlignmentDistance word_alignment_distance(std::span<const std::string> a,
                                          std::span<const std::string> b);

// Words whose presence qualifies a candidate as a pronoun rewrite.
bool is_acceptance_pronoun(std::string_view word);

// history_labels are the entity labels used in previous turns. Pure.
RewriteCategory classify_candidate(std::string_view candidate, std::string_view original,
                                   std::span<const std::string> history_labels);

// Highest-scoring candidate whose category is neither kNone nor forbidden.
// Ties keep input order.
std::optional<RewriteCandidate> select_rewrite(std::span<const RewriteCandidate> candidates,
                                               const std::set<RewriteCategory>& forbidden);
std::optional<RewriteCandidate> select_rewrite(std::span<const RewriteCandidate> candidates,
                                               std::optional<RewriteCategory> prev_category);

}  // namespace kgconv
