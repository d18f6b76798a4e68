#include "modal/naa.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace modal {

Naa::Naa(Alphabet alphabet, std::vector<std::string> states,
         std::vector<std::string> initials,
         const std::map<std::string,
                        std::vector<std::set<std::pair<std::string,
                                                       std::string>>>>& tran)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  if (std::adjacent_find(states_.begin(), states_.end()) != states_.end())
    throw InvalidValue("duplicate state name");
  for (const std::string& s : states_)
    if (!is_valid_name(s)) throw InvalidValue("invalid state name '" + s + "'");

  auto state_of = [&](const std::string& name) {
    int i = state_index(name);
    if (i < 0) throw InvalidValue("undeclared state '" + name + "'");
    return i;
  };
  for (const std::string& s : initials) initials_.push_back(state_of(s));

  tran_.assign(states_.size(), {});
  for (const auto& [s, family] : tran) {
    int si = state_of(s);
    for (const auto& mset : family) {
      AccSet m;
      for (const auto& [l, t] : mset) {
        int li = alphabet_.index(l);
        if (li < 0) throw InvalidValue("undeclared label '" + l + "'");
        m.emplace_back(li, state_of(t));
      }
      tran_[si].push_back(std::move(m));
    }
  }
  canonicalize_and_validate();
}

Naa::Naa(Alphabet alphabet, std::vector<std::string> states,
         std::vector<int> initials, std::vector<std::vector<AccSet>> tran)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      initials_(std::move(initials)),
      tran_(std::move(tran)) {
  if (!std::is_sorted(states_.begin(), states_.end()))
    throw InvalidValue("states must be sorted");
  if (std::adjacent_find(states_.begin(), states_.end()) != states_.end())
    throw InvalidValue("duplicate state name");
  for (const std::string& s : states_)
    if (!is_valid_name(s)) throw InvalidValue("invalid state name '" + s + "'");
  if (tran_.size() != states_.size())
    throw InvalidValue("acceptance table must cover exactly the states");
  canonicalize_and_validate();
}

void Naa::canonicalize_and_validate() {
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()),
                  initials_.end());
  for (int i : initials_)
    if (i < 0 || i >= num_states())
      throw InvalidValue("initial state index out of range");
  for (auto& family : tran_) {
    for (AccSet& m : family) {
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      for (const auto& [a, t] : m) {
        if (a < 0 || a >= alphabet_.size())
          throw InvalidValue("acceptance label index out of range");
        if (t < 0 || t >= num_states())
          throw InvalidValue("acceptance target index out of range");
      }
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
  }
}

int Naa::state_index(const std::string& name) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), name);
  if (it == states_.end() || *it != name) return -1;
  return static_cast<int>(it - states_.begin());
}

bool Naa::operator==(const Naa& other) const {
  return alphabet_ == other.alphabet_ && states_ == other.states_ &&
         initials_ == other.initials_ && tran_ == other.tran_;
}

namespace {

constexpr int kMaxEnumeratedPairs = 22;

// All subsets of `ground` that intersect every member of `family`, in mask
// order. With minimal_only, subsets of an already-kept set are skipped.
std::vector<std::vector<int>> hitting_sets(
    int ground_size, const std::vector<std::vector<int>>& family,
    bool minimal_only) {
  if (ground_size > kMaxEnumeratedPairs)
    throw Error("acceptance-set enumeration too large (" +
                std::to_string(ground_size) + " may-pairs)");
  std::vector<std::vector<int>> out;
  std::vector<unsigned> kept_masks;
  for (unsigned mask = 0; mask < (1u << ground_size); ++mask) {
    bool hits_all = true;
    for (const std::vector<int>& f : family) {
      bool hit = false;
      for (int e : f)
        if (mask & (1u << e)) {
          hit = true;
          break;
        }
      if (!hit) {
        hits_all = false;
        break;
      }
    }
    if (!hits_all) continue;
    if (minimal_only) {
      bool superset = false;
      for (unsigned k : kept_masks)
        if ((mask & k) == k) {
          superset = true;
          break;
        }
      if (superset) continue;
      kept_masks.push_back(mask);
    }
    std::vector<int> elems;
    for (int e = 0; e < ground_size; ++e)
      if (mask & (1u << e)) elems.push_back(e);
    out.push_back(std::move(elems));
  }
  return out;
}

}  // namespace

Naa nf_to_naa(const NormalForm& s) {
  int nl = s.alphabet().size();
  std::vector<std::vector<AccSet>> tran(s.num_vars());
  for (int x = 0; x < s.num_vars(); ++x) {
    // Ground set: the may-pairs of x, i.e. its box sets.
    std::vector<std::pair<int, int>> may;
    for (int a = 0; a < nl; ++a)
      for (int y : s.boxes(x, a)) may.emplace_back(a, y);

    std::map<std::pair<int, int>, int> may_index;
    for (int i = 0; i < static_cast<int>(may.size()); ++i)
      may_index[may[i]] = i;
    std::vector<std::vector<int>> family;
    bool inconsistent = false;
    for (const DiamondSet& n : s.diamonds(x)) {
      std::vector<int> f;
      for (const auto& p : n) f.push_back(may_index.at(p));
      if (f.empty()) inconsistent = true;
      family.push_back(std::move(f));
    }
    if (inconsistent) continue;  // no acceptance set can meet the empty set

    for (const std::vector<int>& elems :
         hitting_sets(static_cast<int>(may.size()), family, false)) {
      AccSet m;
      for (int e : elems) m.push_back(may[e]);
      tran[x].push_back(std::move(m));
    }
  }
  return Naa(s.alphabet(), s.vars(), s.initials(), std::move(tran));
}

NormalForm naa_to_nf(const Naa& a) {
  int nl = a.alphabet().size();

  // Reachable part only.
  std::vector<char> reach(a.num_states(), 0);
  std::queue<int> work;
  for (int i : a.initials())
    if (!reach[i]) {
      reach[i] = 1;
      work.push(i);
    }
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (const AccSet& m : a.tran(s))
      for (const auto& [l, t] : m)
        if (!reach[t]) {
          reach[t] = 1;
          work.push(t);
        }
  }

  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      diamonds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> boxes;
  std::vector<std::string> vars;
  std::vector<std::string> initials;
  for (int i : a.initials()) initials.push_back(a.state_name(i));

  for (int s = 0; s < a.num_states(); ++s) {
    if (!reach[s]) continue;
    vars.push_back(a.state_name(s));

    std::vector<std::pair<int, int>> may;
    for (const AccSet& m : a.tran(s))
      for (const auto& p : m) may.push_back(p);
    std::sort(may.begin(), may.end());
    may.erase(std::unique(may.begin(), may.end()), may.end());
    std::map<std::pair<int, int>, int> may_index;
    for (int i = 0; i < static_cast<int>(may.size()); ++i)
      may_index[may[i]] = i;

    auto& my_boxes = boxes[a.state_name(s)];
    for (int l = 0; l < nl; ++l) my_boxes[a.alphabet().label(l)];
    for (const auto& [l, t] : may)
      my_boxes[a.alphabet().label(l)].insert(a.state_name(t));

    // The diamond family is the set of minimal blockers of the acceptance
    // family: exactly the disjunctive requirements every acceptance set obeys.
    std::vector<std::vector<int>> family;
    for (const AccSet& m : a.tran(s)) {
      std::vector<int> f;
      for (const auto& p : m) f.push_back(may_index.at(p));
      family.push_back(std::move(f));
    }
    auto& my_diamonds = diamonds[a.state_name(s)];
    if (family.empty()) {
      // Locally inconsistent state: an unsatisfiable requirement.
      my_diamonds.push_back({});
    } else {
      for (const std::vector<int>& elems :
           hitting_sets(static_cast<int>(may.size()), family, true)) {
        std::set<std::pair<std::string, std::string>> n;
        for (int e : elems)
          n.emplace(a.alphabet().label(may[e].first),
                    a.state_name(may[e].second));
        if (!n.empty()) my_diamonds.push_back(std::move(n));
      }
    }
  }
  return NormalForm(a.alphabet(), vars, initials, diamonds, boxes);
}

Naa naa_compose(const Naa& a1, const Naa& a2) {
  require_same_alphabet(a1.alphabet(), a2.alphabet(), "naa_compose");

  std::map<std::pair<int, int>, int> seen;
  std::vector<std::pair<int, int>> order;
  std::queue<std::pair<int, int>> work;
  auto visit = [&](int p, int q) {
    auto [it, fresh] =
        seen.emplace(std::make_pair(p, q), static_cast<int>(order.size()));
    if (fresh) {
      order.emplace_back(p, q);
      work.emplace(p, q);
    }
    return it->second;
  };
  for (int i : a1.initials())
    for (int j : a2.initials()) visit(i, j);

  // Acceptance families of visited product states, keyed by visit order.
  std::vector<std::vector<std::vector<std::pair<int, std::pair<int, int>>>>>
      families;
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop();
    int idx = seen.at({p, q});
    if (static_cast<int>(families.size()) <= idx) families.resize(idx + 1);
    auto& family = families[idx];
    for (const AccSet& m1 : a1.tran(p)) {
      for (const AccSet& m2 : a2.tran(q)) {
        std::vector<std::pair<int, std::pair<int, int>>> prod;
        for (const auto& [l1, t1] : m1)
          for (const auto& [l2, t2] : m2)
            if (l1 == l2) {
              prod.emplace_back(l1, std::make_pair(t1, t2));
              visit(t1, t2);
            }
        std::sort(prod.begin(), prod.end());
        prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
        family.push_back(std::move(prod));
      }
    }
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
  }
  families.resize(order.size());

  std::vector<std::pair<std::string, std::string>> name_pairs;
  for (auto [p, q] : order)
    name_pairs.emplace_back(a1.state_name(p), a2.state_name(q));
  std::vector<std::string> names = unique_pair_names(name_pairs);

  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      tran;
  for (size_t i = 0; i < order.size(); ++i) {
    auto& family = tran[names[i]];
    for (const auto& prod : families[i]) {
      std::set<std::pair<std::string, std::string>> m;
      for (const auto& [l, tgt] : prod)
        m.emplace(a1.alphabet().label(l), names[seen.at(tgt)]);
      family.push_back(std::move(m));
    }
  }
  std::vector<std::string> initials;
  for (int i : a1.initials())
    for (int j : a2.initials()) initials.push_back(names[seen.at({i, j})]);
  return Naa(a1.alphabet(), names, initials, tran);
}

NormalForm compose(const NormalForm& s1, const NormalForm& s2) {
  require_same_alphabet(s1.alphabet(), s2.alphabet(), "compose");
  return naa_to_nf(naa_compose(nf_to_naa(s1), nf_to_naa(s2)));
}

Naa unit(const Alphabet& alphabet) {
  std::vector<std::vector<AccSet>> tran(1);
  AccSet all;
  for (int a = 0; a < alphabet.size(); ++a) all.emplace_back(a, 0);
  tran[0].push_back(std::move(all));
  return Naa(alphabet, {"u"}, std::vector<int>{0}, std::move(tran));
}

bool is_deterministic(const Naa& a) {
  if (a.initials().size() != 1) return false;
  for (int s = 0; s < a.num_states(); ++s) {
    std::vector<int> target(a.alphabet().size(), -1);
    for (const AccSet& m : a.tran(s))
      for (const auto& [l, t] : m) {
        if (target[l] >= 0 && target[l] != t) return false;
        target[l] = t;
      }
  }
  return true;
}

namespace {

// Per-state, per-label unique successor of a deterministic automaton;
// -1 where the label occurs in no acceptance set.
std::vector<std::vector<int>> det_successors(const Naa& a) {
  std::vector<std::vector<int>> delta(a.num_states(),
                                      std::vector<int>(a.alphabet().size(), -1));
  for (int s = 0; s < a.num_states(); ++s)
    for (const AccSet& m : a.tran(s))
      for (const auto& [l, t] : m) delta[s][l] = t;
  return delta;
}

}  // namespace

Naa quotient_det(const Naa& s3, const Naa& s1) {
  require_same_alphabet(s3.alphabet(), s1.alphabet(), "quotient_det");
  if (!is_deterministic(s3) || !is_deterministic(s1))
    throw PreconditionError("quotient_det requires deterministic operands");

  const Alphabet& alphabet = s3.alphabet();
  int nl = alphabet.size();
  std::vector<std::vector<int>> d3 = det_successors(s3);
  std::vector<std::vector<int>> d1 = det_successors(s1);

  std::vector<std::pair<std::string, std::string>> name_pairs;
  for (int p = 0; p < s3.num_states(); ++p)
    for (int q = 0; q < s1.num_states(); ++q)
      name_pairs.emplace_back(s3.state_name(p), s1.state_name(q));
  std::vector<std::string> names = unique_pair_names(name_pairs);
  auto id = [&](int p, int q) { return p * s1.num_states() + q; };

  std::string sink = "#top";
  {
    std::set<std::string> used(names.begin(), names.end());
    while (used.count(sink)) sink += "'";
  }

  std::map<std::string,
           std::vector<std::set<std::pair<std::string, std::string>>>>
      tran;
  // The sink is unconstrained: every subset of labels, looping.
  {
    auto& family = tran[sink];
    for (unsigned mask = 0; mask < (1u << nl); ++mask) {
      std::set<std::pair<std::string, std::string>> m;
      for (int l = 0; l < nl; ++l)
        if (mask & (1u << l)) m.emplace(alphabet.label(l), sink);
      family.push_back(std::move(m));
    }
  }

  for (int p = 0; p < s3.num_states(); ++p) {
    for (int q = 0; q < s1.num_states(); ++q) {
      auto& family = tran[names[id(p, q)]];
      for (unsigned mask = 0; mask < (1u << nl); ++mask) {
        // Admissible iff composing with any acceptance set of the divisor
        // stays inside the dividend's family.
        bool admissible = true;
        for (const AccSet& m1 : s1.tran(q)) {
          AccSet composed;
          bool defined = true;
          for (const auto& [l, t1] : m1) {
            (void)t1;
            if (!(mask & (1u << l))) continue;
            if (d3[p][l] < 0) {
              defined = false;
              break;
            }
            composed.emplace_back(l, d3[p][l]);
          }
          if (!defined) {
            admissible = false;
            break;
          }
          std::sort(composed.begin(), composed.end());
          composed.erase(std::unique(composed.begin(), composed.end()),
                         composed.end());
          bool member = false;
          for (const AccSet& m3 : s3.tran(p))
            if (m3 == composed) {
              member = true;
              break;
            }
          if (!member) {
            admissible = false;
            break;
          }
        }
        if (!admissible) continue;

        std::set<std::pair<std::string, std::string>> m;
        for (int l = 0; l < nl; ++l) {
          if (!(mask & (1u << l))) continue;
          if (d1[q][l] >= 0) {
            int tp = d3[p][l];
            // The divisor can fire l, so the quotient's l-successor tracks
            // both components; admissibility guaranteed d3 is defined.
            m.emplace(alphabet.label(l), names[id(tp, d1[q][l])]);
          } else {
            m.emplace(alphabet.label(l), sink);
          }
        }
        family.push_back(std::move(m));
      }
    }
  }

  std::vector<std::string> states = names;
  states.push_back(sink);
  std::vector<std::string> initials{
      names[id(s3.initials()[0], s1.initials()[0])]};
  return Naa(alphabet, states, initials, tran);
}

namespace {

void family_decls_for_var(
    const Alphabet& alphabet, int nvars,
    std::vector<std::pair<std::vector<std::vector<int>>,
                          std::vector<DiamondSet>>>& out) {
  int nl = alphabet.size();
  // Enumerate box maps label-by-label as nested masks.
  std::vector<unsigned> box_masks(nl, 0);
  for (;;) {
    std::vector<std::vector<int>> boxes(nl);
    std::vector<std::pair<int, int>> may;
    for (int l = 0; l < nl; ++l)
      for (int v = 0; v < nvars; ++v)
        if (box_masks[l] & (1u << v)) {
          boxes[l].push_back(v);
          may.emplace_back(l, v);
        }

    int npairs = static_cast<int>(may.size());
    std::vector<DiamondSet> subsets;
    for (unsigned m = 0; m < (1u << npairs); ++m) {
      DiamondSet n;
      for (int e = 0; e < npairs; ++e)
        if (m & (1u << e)) n.push_back(may[e]);
      subsets.push_back(std::move(n));
    }
    unsigned long long nfam = 1ull << subsets.size();
    for (unsigned long long fmask = 0; fmask < nfam; ++fmask) {
      std::vector<DiamondSet> family;
      for (size_t i = 0; i < subsets.size(); ++i)
        if (fmask & (1ull << i)) family.push_back(subsets[i]);
      out.emplace_back(boxes, std::move(family));
    }

    int l = 0;
    while (l < nl) {
      if (++box_masks[l] < (1u << nvars)) break;
      box_masks[l] = 0;
      ++l;
    }
    if (l == nl) break;
  }
}

}  // namespace

unsigned long long enumerate_family_count(const Alphabet& alphabet, int k) {
  if (k < 1) throw PreconditionError("enumerate_family requires k >= 1");
  unsigned long long total = 1;  // bottom
  for (int n = 1; n <= k; ++n) {
    std::vector<std::pair<std::vector<std::vector<int>>,
                          std::vector<DiamondSet>>>
        decls;
    family_decls_for_var(alphabet, n, decls);
    unsigned long long per_var = decls.size();
    unsigned long long structures = 1;
    for (int i = 0; i < n; ++i) structures *= per_var;
    total += structures << n;  // times all initial subsets
  }
  return total;
}

std::vector<NormalForm> enumerate_family(const Alphabet& alphabet, int k) {
  if (k < 1) throw PreconditionError("enumerate_family requires k >= 1");
  std::vector<NormalForm> out;
  out.push_back(bottom(alphabet));

  for (int n = 1; n <= k; ++n) {
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("q" + std::to_string(i));

    std::vector<std::pair<std::vector<std::vector<int>>,
                          std::vector<DiamondSet>>>
        decls;
    family_decls_for_var(alphabet, n, decls);

    std::vector<size_t> pick(n, 0);
    for (;;) {
      std::vector<std::vector<DiamondSet>> diamonds;
      std::vector<std::vector<std::vector<int>>> boxes;
      for (int v = 0; v < n; ++v) {
        boxes.push_back(decls[pick[v]].first);
        diamonds.push_back(decls[pick[v]].second);
      }
      for (unsigned imask = 0; imask < (1u << n); ++imask) {
        std::vector<int> initials;
        for (int v = 0; v < n; ++v)
          if (imask & (1u << v)) initials.push_back(v);
        out.emplace_back(alphabet, vars, initials, diamonds, boxes);
      }

      int v = 0;
      while (v < n) {
        if (++pick[v] < decls.size()) break;
        pick[v] = 0;
        ++v;
      }
      if (v == n) break;
    }
  }
  return out;
}

NormalForm quotient_bounded(const NormalForm& s3, const NormalForm& s1,
                            int k) {
  require_same_alphabet(s3.alphabet(), s1.alphabet(), "quotient_bounded");
  std::vector<NormalForm> qualifying;
  for (const NormalForm& x : enumerate_family(s3.alphabet(), k))
    if (refines(compose(s1, x), s3)) qualifying.push_back(x);
  return disj_many(s3.alphabet(), qualifying);
}

}  // namespace modal
