#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modal/generate.hpp"

namespace modal::testing {

bool bisimilar_partition_refinement(const Lts& m1, const Lts& m2) {
  // States of the disjoint union: 0..n1-1 from m1, n1..n1+n2-1 from m2.
  int n1 = m1.num_states();
  int n = n1 + m2.num_states();
  int nl = m1.alphabet().size();
  auto succ = [&](int s, int a) -> std::vector<int> {
    if (s < n1) return m1.successors(s, a);
    std::vector<int> out;
    for (int t : m2.successors(s - n1, a)) out.push_back(t + n1);
    return out;
  };

  std::vector<int> block(n, 0);
  int blocks = 1;
  for (;;) {
    // Signature: per label, the set of successor blocks.
    std::map<std::vector<std::set<int>>, std::vector<int>> groups;
    for (int s = 0; s < n; ++s) {
      std::vector<std::set<int>> sig(nl);
      sig.resize(nl + 1);
      sig[nl].insert(block[s]);  // keep old blocks separate
      for (int a = 0; a < nl; ++a)
        for (int t : succ(s, a)) sig[a].insert(block[t]);
      groups[sig].push_back(s);
    }
    if (static_cast<int>(groups.size()) == blocks) break;
    blocks = static_cast<int>(groups.size());
    int id = 0;
    for (const auto& [sig, members] : groups) {
      for (int s : members) block[s] = id;
      ++id;
    }
  }
  return block[m1.initial()] == block[n1 + m2.initial()];
}

bool bisim_witness_closed(const Lts& m1, const Lts& m2,
                          const BisimWitness& w) {
  if (!w.pairs.count({m1.state_name(m1.initial()),
                      m2.state_name(m2.initial())}))
    return false;
  for (const auto& [p_name, q_name] : w.pairs) {
    int p = m1.state_index(p_name);
    int q = m2.state_index(q_name);
    if (p < 0 || q < 0) return false;
    for (int a = 0; a < m1.alphabet().size(); ++a) {
      for (int p2 : m1.successors(p, a)) {
        bool matched = false;
        for (int q2 : m2.successors(q, a))
          if (w.pairs.count({m1.state_name(p2), m2.state_name(q2)})) {
            matched = true;
            break;
          }
        if (!matched) return false;
      }
      for (int q2 : m2.successors(q, a)) {
        bool matched = false;
        for (int p2 : m1.successors(p, a))
          if (w.pairs.count({m1.state_name(p2), m2.state_name(q2)})) {
            matched = true;
            break;
          }
        if (!matched) return false;
      }
    }
  }
  return true;
}

bool refinement_witness_closed(const NormalForm& s1, const NormalForm& s2,
                               const RefinementWitness& w) {
  for (int x1 : s1.initials()) {
    bool matched = false;
    for (int x2 : s2.initials())
      if (w.pairs.count({s1.var_name(x1), s2.var_name(x2)})) {
        matched = true;
        break;
      }
    if (!matched) return false;
  }
  auto related = [&](int y1, int y2) {
    return w.pairs.count({s1.var_name(y1), s2.var_name(y2)}) > 0;
  };
  for (const auto& [x1_name, x2_name] : w.pairs) {
    int x1 = s1.var_index(x1_name);
    int x2 = s2.var_index(x2_name);
    if (x1 < 0 || x2 < 0) return false;
    for (const DiamondSet& n2 : s2.diamonds(x2)) {
      bool matched = false;
      for (const DiamondSet& n1 : s1.diamonds(x1)) {
        bool covers = true;
        for (const auto& [a, y1] : n1) {
          bool found = false;
          for (const auto& [b, y2] : n2)
            if (a == b && related(y1, y2)) {
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
    for (int a = 0; a < s1.alphabet().size(); ++a)
      for (int y1 : s1.boxes(x1, a)) {
        bool found = false;
        for (int y2 : s2.boxes(x2, a))
          if (related(y1, y2)) {
            found = true;
            break;
          }
        if (!found) return false;
      }
  }
  return true;
}

Hmlr nf_to_hmlr(const NormalForm& s) {
  const Alphabet& alphabet = s.alphabet();
  // An empty initial set has no plain-formula counterpart with the same
  // variables, so add one initial variable declared ff when needed.
  std::vector<std::string> vars = s.vars();
  std::vector<std::string> initials;
  for (int i : s.initials()) initials.push_back(s.var_name(i));
  std::map<std::string, Hml> decl;
  for (int v = 0; v < s.num_vars(); ++v) {
    Hml body = Hml::tt();
    bool first = true;
    auto add_conjunct = [&](Hml f) {
      body = first ? f : Hml::conj(body, f);
      first = false;
    };
    for (const DiamondSet& n : s.diamonds(v)) {
      Hml alt = Hml::ff();
      bool first_alt = true;
      for (const auto& [a, y] : n) {
        Hml d = Hml::dia(alphabet.label(a), Hml::var(s.var_name(y)));
        alt = first_alt ? d : Hml::disj(alt, d);
        first_alt = false;
      }
      add_conjunct(alt);
    }
    for (int a = 0; a < alphabet.size(); ++a) {
      Hml alt = Hml::ff();
      bool first_alt = true;
      for (int y : s.boxes(v, a)) {
        Hml t = Hml::var(s.var_name(y));
        alt = first_alt ? t : Hml::disj(alt, t);
        first_alt = false;
      }
      add_conjunct(Hml::box(alphabet.label(a), alt));
    }
    decl.emplace(s.var_name(v), body);
  }
  if (initials.empty()) {
    std::string dead = "dead";
    while (s.var_index(dead) >= 0) dead += "'";
    vars.push_back(dead);
    initials.push_back(dead);
    decl.emplace(dead, Hml::ff());
  }
  return Hmlr(alphabet, vars, initials, decl);
}

std::vector<Lts> enumerate_all_lts(const Alphabet& alphabet, int max_states) {
  std::vector<Lts> out;
  for (int n = 1; n <= max_states; ++n) {
    std::vector<std::string> states;
    for (int i = 0; i < n; ++i) states.push_back("e" + std::to_string(i));
    std::vector<std::tuple<int, int, int>> all_triples;
    for (int s = 0; s < n; ++s)
      for (int a = 0; a < alphabet.size(); ++a)
        for (int t = 0; t < n; ++t) all_triples.emplace_back(s, a, t);
    if (all_triples.size() > 20)
      throw Error("exhaustive enumeration too large");
    for (unsigned long long mask = 0; mask < (1ull << all_triples.size());
         ++mask) {
      std::vector<std::tuple<std::string, std::string, std::string>> trans;
      for (size_t i = 0; i < all_triples.size(); ++i)
        if (mask & (1ull << i)) {
          auto [s, a, t] = all_triples[i];
          trans.emplace_back(states[s], alphabet.label(a), states[t]);
        }
      out.emplace_back(alphabet, states, states[0], trans);
    }
  }
  return out;
}

Lts clone_state(const Lts& m, std::uint64_t seed) {
  Rng rng(seed);
  int victim = rng.below(m.num_states());
  std::string clone = m.state_name(victim) + "'";
  while (m.state_index(clone) >= 0) clone += "'";

  std::vector<std::string> states = m.states();
  states.push_back(clone);
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  for (const Lts::Transition& t : m.transitions()) {
    std::string src = m.state_name(t.src);
    std::string dst = m.state_name(t.dst);
    const std::string& label = m.alphabet().label(t.label);
    // Redirect an arbitrary subset of incoming transitions to the clone.
    if (t.dst == victim && rng.chance(0.5)) dst = clone;
    trans.emplace_back(src, label, dst);
    if (t.src == victim) trans.emplace_back(clone, label, dst);
  }
  std::string initial = m.state_name(m.initial());
  if (m.initial() == victim && rng.chance(0.5)) initial = clone;
  return Lts(m.alphabet(), states, initial, trans);
}

}  // namespace modal::testing
