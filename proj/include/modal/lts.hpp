#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "modal/alphabet.hpp"

namespace modal {

/// A finite labeled transition system: states, one initial state, and
/// transitions labeled over a fixed alphabet.
///
/// States are kept sorted by name and transitions sorted by
/// (source, label, target); all values are immutable after construction and
/// all operations on them are pure, so shared read-only use from several
/// threads is safe.
class Lts {
 public:
  /// A transition (source, label, target), all as indices.
  struct Transition {
    int src;
    int label;
    int dst;
    auto operator<=>(const Transition&) const = default;
  };

  Lts(Alphabet alphabet, std::vector<std::string> states,
      const std::string& initial,
      const std::vector<std::tuple<std::string, std::string, std::string>>&
          transitions);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int i) const { return states_[i]; }
  int state_index(const std::string& name) const;
  int initial() const { return initial_; }
  const std::vector<Transition>& transitions() const { return transitions_; }

  /// Targets of transitions from `src` with label `label`, sorted.
  const std::vector<int>& successors(int src, int label) const;

  bool operator==(const Lts& other) const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  int initial_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::vector<int>>> succ_;  // [state][label]
};

/// A bisimulation between two systems: a set of state-name pairs closed under
/// the forth/back transfer conditions and containing the initial pair.
struct BisimWitness {
  std::set<std::pair<std::string, std::string>> pairs;
};

/// Decides bisimilarity of two systems over the same alphabet.
///
/// Computes the greatest relation closed under both transfer conditions by
/// deleting violating pairs from the full product, then returns it when it
/// contains the initial pair; returns nullopt otherwise.
std::optional<BisimWitness> bisimilar(const Lts& m1, const Lts& m2);

/// Fully synchronized (CSP on the whole alphabet) product of two systems,
/// restricted to the states reachable from the initial pair. Product states
/// are named "p|q".
Lts lts_compose(const Lts& m1, const Lts& m2);

/// Restriction of `m` to the states reachable from its initial state.
Lts trim(const Lts& m);

/// Builds unique names for the given (left, right) pairs. The canonical name
/// is "left|right"; clashes get a "#2", "#3", ... suffix in iteration order.
std::vector<std::string> unique_pair_names(
    const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace modal
