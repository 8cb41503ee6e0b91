#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kgconv/kg_store.hpp"

namespace kgconv {

struct WalkConfig {
  std::size_t min_len = 5;
  std::size_t max_len = 19;
  std::size_t per_root = 3;
  double stop_slope = 0.06;
  double stop_intercept = -0.18;
  std::size_t max_resamples = 10;

  // Throws std::invalid_argument when the bounds are inconsistent.
  void validate() const;
};

struct TripleSequence {
  EntityId root;
  std::vector<Triple> triples;
  std::uint64_t seed = 0;

  friend bool operator==(const TripleSequence&, const TripleSequence&) = default;
};

using Rng = std::mt19937_64;

// clamp(slope * i + intercept, 0, 1). Evaluated with a fused multiply-add so
// the default coefficients hit 0 exactly at i = 3.
double stop_probability(std::size_t i, const WalkConfig& config = {});

// Greedy stochastic walk over a root neighborhood. The next triple is drawn
// uniformly among the unused triples whose subject is the root or an
// endpoint of the previous triple. After emitting t_i (zero-based) the walk
// stops with stop_probability(i), except that it always continues below
// min_len and always stops at max_len. Dead ends before min_len restart the
// walk, up to config.max_resamples times (SamplingExhaustedError).
TripleSequence sample_sequence(std::span<const Triple> neighborhood, const EntityId& root,
                               Rng& rng, const WalkConfig& config = {});

// Same walk; the opening triple avoids `avoid_openings` whenever some other
// first-hop triple is available.
TripleSequence sample_sequence(std::span<const Triple> neighborhood, const EntityId& root,
                               Rng& rng, const WalkConfig& config,
                               std::span<const Triple> avoid_openings);

// config.per_root sequences for one root, each with its own seed drawn from
// rng. Openings are pairwise distinct when the neighborhood allows it.
std::vector<TripleSequence> sample_conversations(const KnowledgeGraph& graph,
                                                 const EntityId& root, const WalkConfig& config,
                                                 Rng& rng);
// Same, over a caller-filtered neighborhood.
std::vector<TripleSequence> sample_conversations(std::span<const Triple> pool,
                                                 const EntityId& root, const WalkConfig& config,
                                                 Rng& rng);

// Empty when seq satisfies the root, continuity, no-repeat and length rules.
std::vector<std::string> sequence_violations(const TripleSequence& seq,
                                             const WalkConfig& config = {});

// Deterministic per-root generator: independent of iteration order over roots.
Rng rng_for(std::uint64_t seed, const std::string& key);

}  // namespace kgconv
