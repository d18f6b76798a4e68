#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modal/hml.hpp"
#include "modal/lts.hpp"

namespace modal {

/// A set of (label, variable) pairs: one disjunctive must-constraint.
using DiamondSet = std::vector<std::pair<int, int>>;

/// A recursive formula system in normal form; structurally a disjunctive
/// modal transition system.
///
/// Every variable carries a family of diamond sets (each one a disjunction
/// of required transitions) and, per label, a box set (the allowed
/// continuations). Syntactic consistency is an invariant: every target of a
/// diamond set lies in the corresponding box set.
class NormalForm {
 public:
  /// Name-based constructor; canonicalizes (sorts variables, sets, and
  /// families) and validates all invariants.
  NormalForm(
      Alphabet alphabet, std::vector<std::string> vars,
      std::vector<std::string> initials,
      const std::map<std::string, std::vector<std::set<std::pair<std::string,
                                                                 std::string>>>>&
          diamonds,
      const std::map<std::string, std::map<std::string, std::set<std::string>>>&
          boxes);

  /// Index-based constructor; input is canonicalized and validated.
  NormalForm(Alphabet alphabet, std::vector<std::string> vars,
             std::vector<int> initials,
             std::vector<std::vector<DiamondSet>> diamonds,
             std::vector<std::vector<std::vector<int>>> boxes);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_vars() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(int i) const { return vars_[i]; }
  int var_index(const std::string& name) const;
  const std::vector<int>& initials() const { return initials_; }
  const std::vector<DiamondSet>& diamonds(int var) const {
    return diamonds_[var];
  }
  const std::vector<int>& boxes(int var, int label) const {
    return boxes_[var][label];
  }

  bool operator==(const NormalForm& other) const;

 private:
  void canonicalize_and_validate();

  Alphabet alphabet_;
  std::vector<std::string> vars_;  // sorted, unique
  std::vector<int> initials_;      // sorted indices
  std::vector<std::vector<DiamondSet>> diamonds_;
  std::vector<std::vector<std::vector<int>>> boxes_;  // [var][label]
};

/// A refinement between two normal forms: variable pairs closed under both
/// transfer clauses, matching every initial variable of the left side.
struct RefinementWitness {
  std::set<std::pair<std::string, std::string>> pairs;
};

/// Characteristic formula of a model: one variable per state, a singleton
/// diamond set per transition, and box sets collecting the successors.
NormalForm chi(const Lts& m);

/// Decides refinement between two normal forms over the same alphabet.
/// Computes the greatest relation closed under both transfer clauses by
/// deletion, then checks the initial condition.
std::optional<RefinementWitness> refines(const NormalForm& s1,
                                         const NormalForm& s2);

/// Modal equivalence: refinement in both directions.
bool mod_equiv(const NormalForm& s1, const NormalForm& s2);

/// Model satisfaction via the refinement route: chi(m) refines s.
bool satisfies(const Lts& m, const NormalForm& s);

/// Greatest lower bound (conjunction) of two normal forms, built on the
/// product variable space and trimmed to the reachable part.
NormalForm conj(const NormalForm& s1, const NormalForm& s2);

/// Least upper bound (disjunction): disjoint union of the two systems.
NormalForm disj(const NormalForm& s1, const NormalForm& s2);

/// Disjunction of any number of normal forms over one alphabet; the empty
/// join is bottom(alphabet).
NormalForm disj_many(const Alphabet& alphabet,
                     const std::vector<NormalForm>& parts);

/// The top specification: a single variable with no requirements and full
/// box sets. Every specification refines it.
NormalForm top(const Alphabet& alphabet);

/// The bottom specification: no variables, no initials. Refines everything.
NormalForm bottom(const Alphabet& alphabet);

/// Restriction of `s` to the variables reachable from its initial set.
NormalForm trim(const NormalForm& s);

/// Translates a guarded recursive formula system into an equivalent normal
/// form. Throws PreconditionError when flatten(h) is unguarded.
///
/// The contract that matters: satisfies(m, normalize(h)) == check_hml(m, h)
/// for every model m.
NormalForm normalize(const Hmlr& h);

}  // namespace modal
