#pragma once

#include <string>
#include <vector>

#include "modal/normal_form.hpp"

namespace modal {

/// One acceptance set: the exact collection of (label, target) pairs an
/// implementation state may offer.
using AccSet = std::vector<std::pair<int, int>>;

/// A non-deterministic acceptance automaton: each state carries a family of
/// acceptance sets. An empty family marks a locally inconsistent state; a
/// family containing the empty set permits deadlock.
class Naa {
 public:
  Naa(Alphabet alphabet, std::vector<std::string> states,
      std::vector<std::string> initials,
      const std::map<std::string,
                     std::vector<std::set<std::pair<std::string, std::string>>>>&
          tran);

  Naa(Alphabet alphabet, std::vector<std::string> states,
      std::vector<int> initials, std::vector<std::vector<AccSet>> tran);

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int i) const { return states_[i]; }
  int state_index(const std::string& name) const;
  const std::vector<int>& initials() const { return initials_; }
  const std::vector<AccSet>& tran(int state) const { return tran_[state]; }

  bool operator==(const Naa& other) const;

 private:
  void canonicalize_and_validate();

  Alphabet alphabet_;
  std::vector<std::string> states_;  // sorted, unique
  std::vector<int> initials_;        // sorted indices
  std::vector<std::vector<AccSet>> tran_;
};

/// Normal form to acceptance automaton: Tran(x) collects every subset of the
/// may-pairs of x that meets all diamond sets of x.
Naa nf_to_naa(const NormalForm& s);

/// Acceptance automaton to normal form. One variable per reachable state;
/// the box set of a label collects the targets occurring in any acceptance
/// set, and the diamond family consists of the minimal sets of may-pairs
/// meeting every acceptance set. Inverse of nf_to_naa up to modal
/// equivalence.
NormalForm naa_to_nf(const Naa& a);

/// Synchronized product of acceptance automata: acceptance sets compose
/// pairwise by matching labels. Restricted to the reachable part.
Naa naa_compose(const Naa& a1, const Naa& a2);

/// Composition of normal forms, defined by translation through acceptance
/// automata. Commutative, associative, and monotone up to modal equivalence.
NormalForm compose(const NormalForm& s1, const NormalForm& s2);

/// The unit of composition: one state accepting exactly the full loop on
/// every label.
Naa unit(const Alphabet& alphabet);

/// True iff the automaton has a single initial state and, per state and
/// label, a single target across all acceptance sets.
bool is_deterministic(const Naa& a);

/// Quotient (residual of composition) for deterministic operands:
/// the greatest X with s1 || X <= s3, built on the product state space plus
/// an unconstrained sink for labels the divisor never offers.
/// Throws PreconditionError on nondeterministic input.
Naa quotient_det(const Naa& s3, const Naa& s1);

/// Deterministic enumeration of every normal form over at most `k`
/// canonically named variables (all initial sets, box maps, and consistent
/// diamond families), bottom included. Duplicate-free as literal structures.
std::vector<NormalForm> enumerate_family(const Alphabet& alphabet, int k);

/// Number of structures enumerate_family would produce, without building
/// them.
unsigned long long enumerate_family_count(const Alphabet& alphabet, int k);

/// Bounded quotient: the join of every member X of enumerate_family with
/// compose(s1, X) <= s3; bottom when none qualifies. Exact whenever the true
/// quotient is equivalent to a member of the family.
NormalForm quotient_bounded(const NormalForm& s3, const NormalForm& s1, int k);

}  // namespace modal
