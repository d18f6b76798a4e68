#include "modal/lts.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace modal {

Lts::Lts(Alphabet alphabet, std::vector<std::string> states,
         const std::string& initial,
         const std::vector<std::tuple<std::string, std::string, std::string>>&
             transitions)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
  std::sort(states_.begin(), states_.end());
  if (states_.empty()) throw InvalidValue("transition system has no states");
  if (std::adjacent_find(states_.begin(), states_.end()) != states_.end())
    throw InvalidValue("duplicate state name");
  for (const std::string& s : states_)
    if (!is_valid_name(s)) throw InvalidValue("invalid state name '" + s + "'");

  initial_ = state_index(initial);
  if (initial_ < 0)
    throw InvalidValue("initial state '" + initial + "' is not declared");

  for (const auto& [src, label, dst] : transitions) {
    int si = state_index(src);
    int li = alphabet_.index(label);
    int di = state_index(dst);
    if (si < 0) throw InvalidValue("undeclared source state '" + src + "'");
    if (li < 0) throw InvalidValue("undeclared label '" + label + "'");
    if (di < 0) throw InvalidValue("undeclared target state '" + dst + "'");
    transitions_.push_back({si, li, di});
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                     transitions_.end());

  succ_.assign(states_.size(),
               std::vector<std::vector<int>>(alphabet_.size()));
  for (const Transition& t : transitions_) succ_[t.src][t.label].push_back(t.dst);
}

int Lts::state_index(const std::string& name) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), name);
  if (it == states_.end() || *it != name) return -1;
  return static_cast<int>(it - states_.begin());
}

const std::vector<int>& Lts::successors(int src, int label) const {
  return succ_[src][label];
}

bool Lts::operator==(const Lts& other) const {
  return alphabet_ == other.alphabet_ && states_ == other.states_ &&
         initial_ == other.initial_ && transitions_ == other.transitions_;
}

namespace {

// One deletion pass of the transfer conditions; returns true when a pair was
// removed.
bool prune_bisim(const Lts& m1, const Lts& m2,
                 std::vector<std::vector<char>>& rel) {
  bool changed = false;
  for (int p = 0; p < m1.num_states(); ++p) {
    for (int q = 0; q < m2.num_states(); ++q) {
      if (!rel[p][q]) continue;
      bool ok = true;
      for (int a = 0; ok && a < m1.alphabet().size(); ++a) {
        for (int p2 : m1.successors(p, a)) {
          bool matched = false;
          for (int q2 : m2.successors(q, a))
            if (rel[p2][q2]) {
              matched = true;
              break;
            }
          if (!matched) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
        for (int q2 : m2.successors(q, a)) {
          bool matched = false;
          for (int p2 : m1.successors(p, a))
            if (rel[p2][q2]) {
              matched = true;
              break;
            }
          if (!matched) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) {
        rel[p][q] = 0;
        changed = true;
      }
    }
  }
  return changed;
}

}  // namespace

std::optional<BisimWitness> bisimilar(const Lts& m1, const Lts& m2) {
  require_same_alphabet(m1.alphabet(), m2.alphabet(), "bisimilar");

  std::vector<std::vector<char>> rel(
      m1.num_states(), std::vector<char>(m2.num_states(), 1));
  while (prune_bisim(m1, m2, rel)) {
  }

  if (!rel[m1.initial()][m2.initial()]) return std::nullopt;

  BisimWitness w;
  for (int p = 0; p < m1.num_states(); ++p)
    for (int q = 0; q < m2.num_states(); ++q)
      if (rel[p][q]) w.pairs.emplace(m1.state_name(p), m2.state_name(q));
  return w;
}

std::vector<std::string> unique_pair_names(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> names;
  std::set<std::string> used;
  names.reserve(pairs.size());
  for (const auto& [l, r] : pairs) {
    std::string base = l + "|" + r;
    std::string name = base;
    for (int k = 2; !used.insert(name).second; ++k)
      name = base + "#" + std::to_string(k);
    names.push_back(name);
  }
  return names;
}

Lts lts_compose(const Lts& m1, const Lts& m2) {
  require_same_alphabet(m1.alphabet(), m2.alphabet(), "lts_compose");

  std::map<std::pair<int, int>, int> seen;
  std::vector<std::pair<int, int>> order;
  std::queue<std::pair<int, int>> work;
  auto visit = [&](int p, int q) {
    auto [it, fresh] = seen.emplace(std::make_pair(p, q),
                                    static_cast<int>(order.size()));
    if (fresh) {
      order.emplace_back(p, q);
      work.emplace(p, q);
    }
    return it->second;
  };

  visit(m1.initial(), m2.initial());
  std::vector<std::tuple<int, int, int>> edges;  // (src-ord, label, dst-ord)
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop();
    int src = seen.at({p, q});
    for (int a = 0; a < m1.alphabet().size(); ++a)
      for (int p2 : m1.successors(p, a))
        for (int q2 : m2.successors(q, a))
          edges.emplace_back(src, a, visit(p2, q2));
  }

  std::vector<std::pair<std::string, std::string>> name_pairs;
  name_pairs.reserve(order.size());
  for (auto [p, q] : order)
    name_pairs.emplace_back(m1.state_name(p), m2.state_name(q));
  std::vector<std::string> names = unique_pair_names(name_pairs);

  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  trans.reserve(edges.size());
  for (auto [s, a, d] : edges)
    trans.emplace_back(names[s], m1.alphabet().label(a), names[d]);
  return Lts(m1.alphabet(), names, names[0], trans);
}

Lts trim(const Lts& m) {
  std::vector<char> reach(m.num_states(), 0);
  std::queue<int> work;
  reach[m.initial()] = 1;
  work.push(m.initial());
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int a = 0; a < m.alphabet().size(); ++a)
      for (int t : m.successors(s, a))
        if (!reach[t]) {
          reach[t] = 1;
          work.push(t);
        }
  }

  std::vector<std::string> states;
  for (int s = 0; s < m.num_states(); ++s)
    if (reach[s]) states.push_back(m.state_name(s));
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  for (const Lts::Transition& t : m.transitions())
    if (reach[t.src])
      trans.emplace_back(m.state_name(t.src), m.alphabet().label(t.label),
                         m.state_name(t.dst));
  return Lts(m.alphabet(), states, m.state_name(m.initial()), trans);
}

}  // namespace modal
