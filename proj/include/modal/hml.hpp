#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modal/lts.hpp"

namespace modal {

/// An immutable Hennessy-Milner formula, possibly containing variables.
///
/// Grammar: tt | ff | and | or | <a> phi | [a] phi | x. Nodes are shared,
/// never mutated.
class Hml {
 public:
  enum class Kind { True, False, And, Or, Diamond, Box, Var };

  static Hml tt();
  static Hml ff();
  static Hml conj(Hml left, Hml right);
  static Hml disj(Hml left, Hml right);
  static Hml dia(std::string label, Hml sub);
  static Hml box(std::string label, Hml sub);
  static Hml var(std::string name);

  Kind kind() const { return node_->kind; }
  /// Label of a Diamond/Box node.
  const std::string& label() const { return node_->text; }
  /// Variable name of a Var node.
  const std::string& name() const { return node_->text; }
  /// Operands of And/Or; argument of Diamond/Box is left().
  const Hml& left() const { return *node_->left; }
  const Hml& right() const { return *node_->right; }

  bool operator==(const Hml& other) const;
  bool operator!=(const Hml& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::string text;
    std::shared_ptr<const Hml> left;
    std::shared_ptr<const Hml> right;
  };
  explicit Hml(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A recursive Hennessy-Milner formula system: variables, initial variables,
/// and one declaration per variable. Interpreted by maximal fixed point.
class Hmlr {
 public:
  Hmlr(Alphabet alphabet, std::vector<std::string> vars,
       std::vector<std::string> initials, std::map<std::string, Hml> decl);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::string>& initials() const { return initials_; }
  const Hml& decl(const std::string& var) const;
  const std::map<std::string, Hml>& decls() const { return decl_; }

  bool operator==(const Hmlr& other) const;

 private:
  Alphabet alphabet_;
  std::vector<std::string> vars_;      // sorted, unique
  std::vector<std::string> initials_;  // sorted subset of vars_
  std::map<std::string, Hml> decl_;
};

/// A set of (state, variable) pairs; the carrier of the fixed-point
/// satisfaction computation.
struct SatRelation {
  std::set<std::pair<std::string, std::string>> pairs;

  bool operator==(const SatRelation& other) const = default;
};

/// One step of the satisfaction operator: keeps exactly the pairs (s, x) of
/// `r` whose declaration body evaluates to true at s, reading variables
/// under modalities from `r`.
SatRelation eval_step(const Lts& m, const Hmlr& h, const SatRelation& r);

/// Greatest-fixed-point satisfaction: iterates eval_step from the full
/// relation and tests whether some initial variable holds at the initial
/// state. Multiple initial variables are read disjunctively.
bool check_hml(const Lts& m, const Hmlr& h);

/// Rewrites `h` so that every Diamond/Box argument is a single variable,
/// introducing fresh variables (named by a pre-order counter) for nested
/// arguments. Semantics-preserving.
Hmlr flatten(const Hmlr& h);

/// True iff no variable can reach itself through declaration bodies by
/// and/or alone, i.e. without crossing a modality. Unguarded systems are
/// still accepted by check_hml but rejected by normalization.
bool is_guarded(const Hmlr& h);

}  // namespace modal
