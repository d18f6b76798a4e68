#pragma once

#include <vector>

#include "modal/io.hpp"

namespace modal::testing {

/// Independent bisimilarity decision by partition refinement: repeatedly
/// split blocks of the disjoint union by (label, block) successor
/// signatures. Used only to cross-check the deletion-based algorithm.
bool bisimilar_partition_refinement(const Lts& m1, const Lts& m2);

/// Replays the forth/back transfer conditions over a returned witness.
bool bisim_witness_closed(const Lts& m1, const Lts& m2, const BisimWitness& w);

/// Replays both refinement transfer clauses and the initial condition over a
/// returned witness.
bool refinement_witness_closed(const NormalForm& s1, const NormalForm& s2,
                               const RefinementWitness& w);

/// Reads a normal form back as a plain recursive formula; satisfaction of
/// the result under the fixed-point semantics is an independent route to
/// satisfies().
Hmlr nf_to_hmlr(const NormalForm& s);

/// Every transition system over `alphabet` with up to `max_states` states
/// (initial state fixed to the first): exhaustive small-model oracle.
std::vector<Lts> enumerate_all_lts(const Alphabet& alphabet, int max_states);

/// A bisimilarity-preserving transform: clones a state and redirects part of
/// its incoming transitions to the clone.
Lts clone_state(const Lts& m, std::uint64_t seed);

}  // namespace modal::testing
