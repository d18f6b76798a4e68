#pragma once

#include <cstdint>
#include <string>

#include "modal/hml.hpp"
#include "modal/naa.hpp"
#include "modal/normal_form.hpp"

namespace modal {

/// A small, portable pseudo-random stream (splitmix64). Identical seeds give
/// identical streams on every platform; the standard-library distributions
/// are deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, n); n > 0.
  int below(int n);
  /// Uniform in [lo, hi].
  int range(int lo, int hi);
  bool chance(double p);

  /// Derives an independent stream for a named substream and index.
  static std::uint64_t mix(std::uint64_t seed, const std::string& tag,
                           std::uint64_t index);

 private:
  std::uint64_t state_;
};

/// Configuration of the seeded generators. Equal configurations generate
/// identical sequences.
struct GenConfig {
  std::uint64_t seed = 1;
  Alphabet alphabet{{"a", "b"}};
  int max_vars = 3;    // 1..4
  int max_states = 3;  // 1..4
  double dia_density = 0.5;
  double box_density = 0.5;
  int cases = 200;

  void validate() const;
};

/// Deterministic pseudo-random transition system number `index`.
Lts gen_lts(const GenConfig& cfg, std::uint64_t index);

/// Deterministic pseudo-random deterministic transition system (at most one
/// successor per state and label).
Lts gen_det_lts(const GenConfig& cfg, std::uint64_t index);

/// Deterministic pseudo-random normal form. Output satisfies the syntactic
/// consistency invariant and every diamond set is nonempty, so all variables
/// are locally consistent.
NormalForm gen_nf(const GenConfig& cfg, std::uint64_t index);

/// Deterministic normal form whose acceptance automaton is deterministic:
/// a single initial variable and at most one box target per label.
NormalForm gen_det_nf(const GenConfig& cfg, std::uint64_t index);

/// Deterministic pseudo-random guarded recursive formula.
Hmlr gen_hmlr(const GenConfig& cfg, std::uint64_t index);

/// A strengthening of `s` (adds diamond sets, may drop initial variables):
/// the result always refines `s`. Used to build premise-true refinement
/// pairs for the conditional laws.
NormalForm gen_strengthening(const NormalForm& s, std::uint64_t seed);

}  // namespace modal
