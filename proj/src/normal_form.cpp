#include "modal/normal_form.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace modal {

NormalForm::NormalForm(
    Alphabet alphabet, std::vector<std::string> vars,
    std::vector<std::string> initials,
    const std::map<std::string,
                   std::vector<std::set<std::pair<std::string, std::string>>>>&
        diamonds,
    const std::map<std::string, std::map<std::string, std::set<std::string>>>&
        boxes)
    : alphabet_(std::move(alphabet)), vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
    throw InvalidValue("duplicate variable name");
  for (const std::string& v : vars_)
    if (!is_valid_name(v))
      throw InvalidValue("invalid variable name '" + v + "'");

  auto var_of = [&](const std::string& name) {
    int i = var_index(name);
    if (i < 0) throw InvalidValue("undeclared variable '" + name + "'");
    return i;
  };
  auto label_of = [&](const std::string& name) {
    int i = alphabet_.index(name);
    if (i < 0) throw InvalidValue("undeclared label '" + name + "'");
    return i;
  };

  for (const std::string& v : initials) initials_.push_back(var_of(v));

  diamonds_.assign(vars_.size(), {});
  boxes_.assign(vars_.size(),
                std::vector<std::vector<int>>(alphabet_.size()));
  for (const auto& [v, family] : diamonds) {
    int vi = var_of(v);
    for (const auto& dset : family) {
      DiamondSet n;
      for (const auto& [l, y] : dset) n.emplace_back(label_of(l), var_of(y));
      diamonds_[vi].push_back(std::move(n));
    }
  }
  for (const auto& [v, by_label] : boxes) {
    int vi = var_of(v);
    for (const auto& [l, targets] : by_label) {
      int li = label_of(l);
      for (const std::string& y : targets) boxes_[vi][li].push_back(var_of(y));
    }
  }
  canonicalize_and_validate();
}

NormalForm::NormalForm(Alphabet alphabet, std::vector<std::string> vars,
                       std::vector<int> initials,
                       std::vector<std::vector<DiamondSet>> diamonds,
                       std::vector<std::vector<std::vector<int>>> boxes)
    : alphabet_(std::move(alphabet)),
      vars_(std::move(vars)),
      initials_(std::move(initials)),
      diamonds_(std::move(diamonds)),
      boxes_(std::move(boxes)) {
  // Index-based input must already use sorted variable names.
  if (!std::is_sorted(vars_.begin(), vars_.end()))
    throw InvalidValue("variables must be sorted");
  if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
    throw InvalidValue("duplicate variable name");
  for (const std::string& v : vars_)
    if (!is_valid_name(v))
      throw InvalidValue("invalid variable name '" + v + "'");
  if (diamonds_.size() != vars_.size() || boxes_.size() != vars_.size())
    throw InvalidValue("diamond/box tables must cover exactly the variables");
  canonicalize_and_validate();
}

void NormalForm::canonicalize_and_validate() {
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()),
                  initials_.end());
  for (int i : initials_)
    if (i < 0 || i >= num_vars())
      throw InvalidValue("initial variable index out of range");

  for (auto& by_label : boxes_) {
    if (static_cast<int>(by_label.size()) != alphabet_.size())
      throw InvalidValue("box table must have one entry per label");
    for (auto& targets : by_label) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()),
                    targets.end());
      for (int y : targets)
        if (y < 0 || y >= num_vars())
          throw InvalidValue("box target index out of range");
    }
  }

  for (int v = 0; v < num_vars(); ++v) {
    for (DiamondSet& n : diamonds_[v]) {
      std::sort(n.begin(), n.end());
      n.erase(std::unique(n.begin(), n.end()), n.end());
      for (const auto& [a, y] : n) {
        if (a < 0 || a >= alphabet_.size())
          throw InvalidValue("diamond label index out of range");
        if (y < 0 || y >= num_vars())
          throw InvalidValue("diamond target index out of range");
        if (!std::binary_search(boxes_[v][a].begin(), boxes_[v][a].end(), y))
          throw InvalidValue(
              "inconsistent normal form: diamond target '" + vars_[y] +
              "' of variable '" + vars_[v] + "' is missing from its '" +
              alphabet_.label(a) + "' box set");
      }
    }
    std::sort(diamonds_[v].begin(), diamonds_[v].end());
    diamonds_[v].erase(
        std::unique(diamonds_[v].begin(), diamonds_[v].end()),
        diamonds_[v].end());
  }
}

int NormalForm::var_index(const std::string& name) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
  if (it == vars_.end() || *it != name) return -1;
  return static_cast<int>(it - vars_.begin());
}

bool NormalForm::operator==(const NormalForm& other) const {
  return alphabet_ == other.alphabet_ && vars_ == other.vars_ &&
         initials_ == other.initials_ && diamonds_ == other.diamonds_ &&
         boxes_ == other.boxes_;
}

NormalForm chi(const Lts& m) {
  int nl = m.alphabet().size();
  std::vector<std::vector<DiamondSet>> diamonds(m.num_states());
  std::vector<std::vector<std::vector<int>>> boxes(
      m.num_states(), std::vector<std::vector<int>>(nl));
  for (const Lts::Transition& t : m.transitions()) {
    diamonds[t.src].push_back({{t.label, t.dst}});
    boxes[t.src][t.label].push_back(t.dst);
  }
  return NormalForm(m.alphabet(), m.states(), {m.initial()},
                    std::move(diamonds), std::move(boxes));
}

namespace {

bool check_diamond_clause(const NormalForm& s1, const NormalForm& s2, int x1,
                          int x2, const std::vector<std::vector<char>>& rel) {
  for (const DiamondSet& n2 : s2.diamonds(x2)) {
    bool matched = false;
    for (const DiamondSet& n1 : s1.diamonds(x1)) {
      bool covers = true;
      for (const auto& [a, y1] : n1) {
        bool found = false;
        for (const auto& [b, y2] : n2)
          if (a == b && rel[y1][y2]) {
            found = true;
            break;
          }
        if (!found) {
          covers = false;
          break;
        }
      }
      if (covers) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool check_box_clause(const NormalForm& s1, const NormalForm& s2, int x1,
                      int x2, const std::vector<std::vector<char>>& rel) {
  for (int a = 0; a < s1.alphabet().size(); ++a) {
    for (int y1 : s1.boxes(x1, a)) {
      bool found = false;
      for (int y2 : s2.boxes(x2, a))
        if (rel[y1][y2]) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<RefinementWitness> refines(const NormalForm& s1,
                                         const NormalForm& s2) {
  require_same_alphabet(s1.alphabet(), s2.alphabet(), "refines");

  std::vector<std::vector<char>> rel(s1.num_vars(),
                                     std::vector<char>(s2.num_vars(), 1));
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x1 = 0; x1 < s1.num_vars(); ++x1)
      for (int x2 = 0; x2 < s2.num_vars(); ++x2) {
        if (!rel[x1][x2]) continue;
        if (!check_diamond_clause(s1, s2, x1, x2, rel) ||
            !check_box_clause(s1, s2, x1, x2, rel)) {
          rel[x1][x2] = 0;
          changed = true;
        }
      }
  }

  for (int x1 : s1.initials()) {
    bool matched = false;
    for (int x2 : s2.initials())
      if (rel[x1][x2]) {
        matched = true;
        break;
      }
    if (!matched) return std::nullopt;
  }

  RefinementWitness w;
  for (int x1 = 0; x1 < s1.num_vars(); ++x1)
    for (int x2 = 0; x2 < s2.num_vars(); ++x2)
      if (rel[x1][x2]) w.pairs.emplace(s1.var_name(x1), s2.var_name(x2));
  return w;
}

bool mod_equiv(const NormalForm& s1, const NormalForm& s2) {
  return refines(s1, s2).has_value() && refines(s2, s1).has_value();
}

bool satisfies(const Lts& m, const NormalForm& s) {
  require_same_alphabet(m.alphabet(), s.alphabet(), "satisfies");
  return refines(chi(m), s).has_value();
}

namespace {

// Shared worker for trim() and the product constructions: keeps the
// variables reachable from the initial set and renames nothing.
NormalForm restrict_reachable(const NormalForm& s) {
  std::vector<char> reach(s.num_vars(), 0);
  std::queue<int> work;
  for (int i : s.initials()) {
    if (!reach[i]) {
      reach[i] = 1;
      work.push(i);
    }
  }
  while (!work.empty()) {
    int x = work.front();
    work.pop();
    auto see = [&](int y) {
      if (!reach[y]) {
        reach[y] = 1;
        work.push(y);
      }
    };
    for (int a = 0; a < s.alphabet().size(); ++a)
      for (int y : s.boxes(x, a)) see(y);
    for (const DiamondSet& n : s.diamonds(x))
      for (const auto& [a, y] : n) see(y);
  }

  std::vector<int> remap(s.num_vars(), -1);
  std::vector<std::string> vars;
  for (int x = 0; x < s.num_vars(); ++x)
    if (reach[x]) {
      remap[x] = static_cast<int>(vars.size());
      vars.push_back(s.var_name(x));
    }

  std::vector<int> initials;
  for (int i : s.initials()) initials.push_back(remap[i]);
  std::vector<std::vector<DiamondSet>> diamonds(vars.size());
  std::vector<std::vector<std::vector<int>>> boxes(
      vars.size(), std::vector<std::vector<int>>(s.alphabet().size()));
  for (int x = 0; x < s.num_vars(); ++x) {
    if (!reach[x]) continue;
    int nx = remap[x];
    for (const DiamondSet& n : s.diamonds(x)) {
      DiamondSet nn;
      for (const auto& [a, y] : n) nn.emplace_back(a, remap[y]);
      diamonds[nx].push_back(std::move(nn));
    }
    for (int a = 0; a < s.alphabet().size(); ++a)
      for (int y : s.boxes(x, a)) boxes[nx][a].push_back(remap[y]);
  }
  return NormalForm(s.alphabet(), std::move(vars), std::move(initials),
                    std::move(diamonds), std::move(boxes));
}

}  // namespace

NormalForm trim(const NormalForm& s) { return restrict_reachable(s); }

NormalForm conj(const NormalForm& s1, const NormalForm& s2) {
  require_same_alphabet(s1.alphabet(), s2.alphabet(), "conj");
  int nl = s1.alphabet().size();

  std::vector<std::pair<std::string, std::string>> name_pairs;
  name_pairs.reserve(static_cast<size_t>(s1.num_vars()) * s2.num_vars());
  for (int x1 = 0; x1 < s1.num_vars(); ++x1)
    for (int x2 = 0; x2 < s2.num_vars(); ++x2)
      name_pairs.emplace_back(s1.var_name(x1), s2.var_name(x2));
  std::vector<std::string> names = unique_pair_names(name_pairs);
  auto id = [&](int x1, int x2) { return x1 * s2.num_vars() + x2; };

  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      diamonds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> boxes;
  std::vector<std::string> initials;

  for (int x1 = 0; x1 < s1.num_vars(); ++x1) {
    for (int x2 = 0; x2 < s2.num_vars(); ++x2) {
      const std::string& me = names[id(x1, x2)];
      auto& my_boxes = boxes[me];
      for (int a = 0; a < nl; ++a) {
        auto& targets = my_boxes[s1.alphabet().label(a)];
        for (int y1 : s1.boxes(x1, a))
          for (int y2 : s2.boxes(x2, a)) targets.insert(names[id(y1, y2)]);
      }
      auto& family = diamonds[me];
      for (const DiamondSet& n1 : s1.diamonds(x1)) {
        std::set<std::pair<std::string, std::string>> n;
        for (const auto& [a, y1] : n1)
          for (int y2 : s2.boxes(x2, a))
            n.emplace(s1.alphabet().label(a), names[id(y1, y2)]);
        family.push_back(std::move(n));
      }
      for (const DiamondSet& n2 : s2.diamonds(x2)) {
        std::set<std::pair<std::string, std::string>> n;
        for (const auto& [a, y2] : n2)
          for (int y1 : s1.boxes(x1, a))
            n.emplace(s1.alphabet().label(a), names[id(y1, y2)]);
        family.push_back(std::move(n));
      }
    }
  }
  for (int x1 : s1.initials())
    for (int x2 : s2.initials()) initials.push_back(names[id(x1, x2)]);

  NormalForm full(s1.alphabet(), names, initials, diamonds, boxes);
  return restrict_reachable(full);
}

NormalForm disj_many(const Alphabet& alphabet,
                     const std::vector<NormalForm>& parts) {
  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      diamonds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> boxes;
  std::vector<std::string> vars;
  std::vector<std::string> initials;

  for (size_t k = 0; k < parts.size(); ++k) {
    const NormalForm& s = parts[k];
    require_same_alphabet(alphabet, s.alphabet(), "disj");
    std::string prefix = std::to_string(k) + ":";
    auto renamed = [&](int x) { return prefix + s.var_name(x); };
    for (int x = 0; x < s.num_vars(); ++x) {
      vars.push_back(renamed(x));
      auto& family = diamonds[renamed(x)];
      for (const DiamondSet& n : s.diamonds(x)) {
        std::set<std::pair<std::string, std::string>> nn;
        for (const auto& [a, y] : n)
          nn.emplace(alphabet.label(a), renamed(y));
        family.push_back(std::move(nn));
      }
      auto& my_boxes = boxes[renamed(x)];
      for (int a = 0; a < alphabet.size(); ++a) {
        auto& targets = my_boxes[alphabet.label(a)];
        for (int y : s.boxes(x, a)) targets.insert(renamed(y));
      }
    }
    for (int i : s.initials()) initials.push_back(renamed(i));
  }
  return NormalForm(alphabet, vars, initials, diamonds, boxes);
}

NormalForm disj(const NormalForm& s1, const NormalForm& s2) {
  require_same_alphabet(s1.alphabet(), s2.alphabet(), "disj");
  return disj_many(s1.alphabet(), {s1, s2});
}

NormalForm top(const Alphabet& alphabet) {
  std::vector<std::vector<std::vector<int>>> boxes(
      1, std::vector<std::vector<int>>(alphabet.size(),
                                       std::vector<int>{0}));
  return NormalForm(alphabet, {"tt"}, std::vector<int>{0}, {{}},
                    std::move(boxes));
}

NormalForm bottom(const Alphabet& alphabet) {
  return NormalForm(alphabet, {}, std::vector<int>{}, {}, {});
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

// Atoms of a flattened, inlined declaration body: a modality applied to one
// variable. Sorted (kind, label, var) triples form a disjunct.
struct Atom {
  bool must;  // true: diamond, false: box
  int label;
  int var;
  auto operator<=>(const Atom&) const = default;
};

using Disjunct = std::vector<Atom>;  // sorted, unique

// Disjunctive normal form of a body; empty list means False, a list holding
// the empty disjunct means True.
std::vector<Disjunct> to_dnf(const Hml& f, const Alphabet& alphabet,
                             const std::map<std::string, int>& var_index) {
  switch (f.kind()) {
    case Hml::Kind::True:
      return {Disjunct{}};
    case Hml::Kind::False:
      return {};
    case Hml::Kind::Diamond:
    case Hml::Kind::Box: {
      Atom a{f.kind() == Hml::Kind::Diamond, alphabet.index(f.label()),
             var_index.at(f.left().name())};
      return {Disjunct{a}};
    }
    case Hml::Kind::Or: {
      std::vector<Disjunct> l = to_dnf(f.left(), alphabet, var_index);
      std::vector<Disjunct> r = to_dnf(f.right(), alphabet, var_index);
      l.insert(l.end(), r.begin(), r.end());
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      return l;
    }
    case Hml::Kind::And: {
      std::vector<Disjunct> l = to_dnf(f.left(), alphabet, var_index);
      std::vector<Disjunct> r = to_dnf(f.right(), alphabet, var_index);
      std::vector<Disjunct> out;
      for (const Disjunct& dl : l)
        for (const Disjunct& dr : r) {
          Disjunct d = dl;
          d.insert(d.end(), dr.begin(), dr.end());
          std::sort(d.begin(), d.end());
          d.erase(std::unique(d.begin(), d.end()), d.end());
          out.push_back(std::move(d));
        }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case Hml::Kind::Var:
      throw PreconditionError(
          "normalize: variable at boolean level survived inlining");
  }
  return {};
}

// Substitutes declaration bodies for top-level variable occurrences;
// guardedness makes the reference order well-founded.
Hml inline_toplevel(const Hml& f, const std::map<std::string, Hml>& inlined) {
  switch (f.kind()) {
    case Hml::Kind::Var:
      return inlined.at(f.name());
    case Hml::Kind::And:
      return Hml::conj(inline_toplevel(f.left(), inlined),
                       inline_toplevel(f.right(), inlined));
    case Hml::Kind::Or:
      return Hml::disj(inline_toplevel(f.left(), inlined),
                       inline_toplevel(f.right(), inlined));
    default:
      return f;
  }
}

}  // namespace

NormalForm normalize(const Hmlr& input) {
  Hmlr h = flatten(input);
  if (!is_guarded(h))
    throw PreconditionError("normalize: formula system is unguarded");

  const Alphabet& alphabet = h.alphabet();
  int nl = alphabet.size();
  int nv = static_cast<int>(h.vars().size());
  std::map<std::string, int> var_index;
  for (int i = 0; i < nv; ++i) var_index[h.vars()[i]] = i;

  // Substitute away top-level variable references; guardedness bounds the
  // number of rounds.
  std::map<std::string, Hml> inlined;
  for (const std::string& v : h.vars()) inlined.emplace(v, h.decl(v));
  bool dirty = true;
  while (dirty) {
    dirty = false;
    for (const std::string& v : h.vars()) {
      std::set<std::string> refs;
      std::function<void(const Hml&)> scan = [&](const Hml& f) {
        if (f.kind() == Hml::Kind::Var)
          refs.insert(f.name());
        else if (f.kind() == Hml::Kind::And || f.kind() == Hml::Kind::Or) {
          scan(f.left());
          scan(f.right());
        }
      };
      scan(inlined.at(v));
      if (!refs.empty()) {
        inlined.at(v) = inline_toplevel(inlined.at(v), inlined);
        dirty = true;
      }
    }
  }

  // Per source variable: its DNF over modal atoms.
  std::vector<std::vector<Disjunct>> dnf(nv);
  for (int i = 0; i < nv; ++i)
    dnf[i] = to_dnf(inlined.at(h.vars()[i]), alphabet, var_index);

  // Output variables are canonical atom sets. The expansions of a set of
  // source variables are the unions of one disjunct per member.
  std::map<Disjunct, int> out_index;
  std::vector<Disjunct> out_sets;
  std::queue<int> work;
  auto intern = [&](const Disjunct& d) {
    auto [it, fresh] = out_index.emplace(d, static_cast<int>(out_sets.size()));
    if (fresh) {
      out_sets.push_back(d);
      work.push(it->second);
    }
    return it->second;
  };

  auto expansions = [&](const std::vector<int>& sources,
                        const Disjunct& base) {
    std::vector<Disjunct> acc{base};
    for (int src : sources) {
      std::vector<Disjunct> next;
      for (const Disjunct& got : acc)
        for (const Disjunct& d : dnf[src]) {
          Disjunct u = got;
          u.insert(u.end(), d.begin(), d.end());
          std::sort(u.begin(), u.end());
          u.erase(std::unique(u.begin(), u.end()), u.end());
          next.push_back(std::move(u));
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      acc = std::move(next);
    }
    return acc;
  };

  std::vector<int> out_initials;
  {
    std::set<int> seen;
    for (const std::string& x0 : h.initials())
      for (const Disjunct& d : dnf[var_index.at(x0)])
        seen.insert(intern(d));
    out_initials.assign(seen.begin(), seen.end());
  }

  struct OutDecl {
    std::vector<std::vector<std::pair<int, int>>> diamonds;  // (label, out)
    std::vector<std::set<int>> boxes;                        // per label
  };
  std::vector<OutDecl> decls;

  while (!work.empty()) {
    int v = work.front();
    work.pop();
    if (static_cast<int>(decls.size()) <= v) decls.resize(v + 1);
    const Disjunct atoms = out_sets[v];
    OutDecl d;
    d.boxes.assign(nl, {});

    std::vector<std::vector<int>> box_sources(nl);
    for (const Atom& at : atoms)
      if (!at.must) box_sources[at.label].push_back(at.var);

    for (int a = 0; a < nl; ++a) {
      for (const Disjunct& e : expansions(box_sources[a], {}))
        d.boxes[a].insert(intern(e));
    }
    for (const Atom& at : atoms) {
      if (!at.must) continue;
      std::vector<int> sources = box_sources[at.label];
      sources.push_back(at.var);
      std::vector<std::pair<int, int>> n;
      for (const Disjunct& e : expansions(sources, {})) {
        int target = intern(e);
        n.emplace_back(at.label, target);
        d.boxes[at.label].insert(target);
      }
      d.diamonds.push_back(std::move(n));
    }
    if (static_cast<int>(decls.size()) <= v) decls.resize(v + 1);
    decls[v] = std::move(d);
  }

  int n_out = static_cast<int>(out_sets.size());
  decls.resize(n_out);

  std::vector<std::string> names(n_out);
  for (int i = 0; i < n_out; ++i) names[i] = "n" + std::to_string(i);

  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      diamonds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> boxes;
  for (int i = 0; i < n_out; ++i) {
    auto& family = diamonds[names[i]];
    for (const auto& n : decls[i].diamonds) {
      std::set<std::pair<std::string, std::string>> nn;
      for (const auto& [a, y] : n) nn.emplace(alphabet.label(a), names[y]);
      family.push_back(std::move(nn));
    }
    auto& my_boxes = boxes[names[i]];
    for (int a = 0; a < nl; ++a) {
      auto& targets = my_boxes[alphabet.label(a)];
      for (int y : decls[i].boxes[a]) targets.insert(names[y]);
    }
  }
  std::vector<std::string> initial_names;
  for (int i : out_initials) initial_names.push_back(names[i]);

  NormalForm out(alphabet, names, initial_names, diamonds, boxes);
  return trim(out);
}

}  // namespace modal
