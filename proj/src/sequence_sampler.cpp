#include "kgconv/sequence_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "kgconv/error.hpp"

namespace kgconv {

void WalkConfig::validate() const {
  if (min_len == 0 || min_len > max_len)
    throw std::invalid_argument("walk config requires 0 < min_len <= max_len");
  if (per_root == 0) throw std::invalid_argument("walk config requires per_root >= 1");
}

double stop_probability(std::size_t i, const WalkConfig& config) {
  double p = std::fma(config.stop_slope, static_cast<double>(i), config.stop_intercept);
  return std::clamp(p, 0.0, 1.0);
}

namespace {

bool admissible_subject(const Triple& t, const EntityId& root, const Triple* prev) {
  if (t.subject == root) return true;
  if (!prev) return false;
  if (t.subject == prev->subject) return true;
  const auto* o = as_entity(prev->object);
  return o && t.subject == *o;
}

// One walk attempt; returns an empty sequence on a dead end below min_len.
std::vector<Triple> walk_once(std::span<const Triple> pool, const EntityId& root, Rng& rng,
                              const WalkConfig& config, std::span<const Triple> avoid) {
  std::vector<Triple> seq;
  std::vector<bool> used(pool.size(), false);
  std::vector<std::size_t> candidates;

  while (true) {
    const Triple* prev = seq.empty() ? nullptr : &seq.back();
    candidates.clear();
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (!used[k] && admissible_subject(pool[k], root, prev)) candidates.push_back(k);
    }
    if (seq.empty() && !avoid.empty()) {
      std::vector<std::size_t> fresh;
      for (std::size_t k : candidates) {
        if (std::find(avoid.begin(), avoid.end(), pool[k]) == avoid.end()) fresh.push_back(k);
      }
      if (!fresh.empty()) candidates = std::move(fresh);
    }
    if (candidates.empty()) {
      if (seq.size() >= config.min_len) return seq;
      return {};
    }

    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    std::size_t chosen = candidates[pick(rng)];
    used[chosen] = true;
    seq.push_back(pool[chosen]);

    if (seq.size() >= config.max_len) return seq;
    if (seq.size() < config.min_len) continue;
    std::bernoulli_distribution stop(stop_probability(seq.size() - 1, config));
    if (stop(rng)) return seq;
  }
}

}  // namespace

TripleSequence sample_sequence(std::span<const Triple> neighborhood, const EntityId& root,
                               Rng& rng, const WalkConfig& config) {
  return sample_sequence(neighborhood, root, rng, config, {});
}

TripleSequence sample_sequence(std::span<const Triple> neighborhood, const EntityId& root,
                               Rng& rng, const WalkConfig& config,
                               std::span<const Triple> avoid_openings) {
  config.validate();
  if (neighborhood.size() < config.min_len) {
    throw SamplingExhaustedError("neighborhood of " + root.str() + " has " +
                                 std::to_string(neighborhood.size()) + " triples, fewer than " +
                                 std::to_string(config.min_len));
  }
  for (std::size_t attempt = 0; attempt <= config.max_resamples; ++attempt) {
    auto triples = walk_once(neighborhood, root, rng, config, avoid_openings);
    if (!triples.empty()) return TripleSequence{root, std::move(triples), 0};
  }
  throw SamplingExhaustedError("no walk of length " + std::to_string(config.min_len) +
                               " from " + root.str() + " after " +
                               std::to_string(config.max_resamples) + " resamples");
}

std::vector<TripleSequence> sample_conversations(const KnowledgeGraph& graph,
                                                 const EntityId& root, const WalkConfig& config,
                                                 Rng& rng) {
  const auto pool = neighborhood(graph, root);
  return sample_conversations(pool, root, config, rng);
}

std::vector<TripleSequence> sample_conversations(std::span<const Triple> pool,
                                                 const EntityId& root, const WalkConfig& config,
                                                 Rng& rng) {
  std::vector<TripleSequence> out;
  std::vector<Triple> openings;
  for (std::size_t k = 0; k < config.per_root; ++k) {
    const std::uint64_t seed = rng();
    Rng local(seed);
    TripleSequence seq = sample_sequence(pool, root, local, config, openings);
    seq.seed = seed;
    openings.push_back(seq.triples.front());
    out.push_back(std::move(seq));
  }
  return out;
}

std::vector<std::string> sequence_violations(const TripleSequence& seq, const WalkConfig& config) {
  std::vector<std::string> out;
  const auto& ts = seq.triples;
  if (ts.size() < config.min_len || ts.size() > config.max_len)
    out.push_back("length " + std::to_string(ts.size()) + " outside [" +
                  std::to_string(config.min_len) + ", " + std::to_string(config.max_len) + "]");
  if (ts.empty()) return out;
  if (ts.front().subject != seq.root) out.push_back("first triple does not start at the root");
  std::set<Triple> seen;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!seen.insert(ts[i]).second) out.push_back("triple " + std::to_string(i) + " repeats");
    if (i > 0 && !admissible_subject(ts[i], seq.root, &ts[i - 1]))
      out.push_back("triple " + std::to_string(i) + " breaks subject continuity");
  }
  return out;
}

Rng rng_for(std::uint64_t seed, const std::string& key) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : key) material.push_back(c);
  std::seed_seq seq(material.begin(), material.end());
  return Rng(seq);
}

}  // namespace kgconv
