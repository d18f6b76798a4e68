#include "modal/hml.hpp"

#include <algorithm>
#include <functional>

namespace modal {

namespace {

std::shared_ptr<const Hml> wrap(Hml f) {
  return std::make_shared<const Hml>(std::move(f));
}

}  // namespace

Hml Hml::tt() {
  return Hml(std::make_shared<const Node>(Node{Kind::True, "", nullptr, nullptr}));
}

Hml Hml::ff() {
  return Hml(std::make_shared<const Node>(Node{Kind::False, "", nullptr, nullptr}));
}

Hml Hml::conj(Hml left, Hml right) {
  return Hml(std::make_shared<const Node>(
      Node{Kind::And, "", wrap(std::move(left)), wrap(std::move(right))}));
}

Hml Hml::disj(Hml left, Hml right) {
  return Hml(std::make_shared<const Node>(
      Node{Kind::Or, "", wrap(std::move(left)), wrap(std::move(right))}));
}

Hml Hml::dia(std::string label, Hml sub) {
  return Hml(std::make_shared<const Node>(
      Node{Kind::Diamond, std::move(label), wrap(std::move(sub)), nullptr}));
}

Hml Hml::box(std::string label, Hml sub) {
  return Hml(std::make_shared<const Node>(
      Node{Kind::Box, std::move(label), wrap(std::move(sub)), nullptr}));
}

Hml Hml::var(std::string name) {
  return Hml(std::make_shared<const Node>(
      Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

bool Hml::operator==(const Hml& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->text != other.node_->text) return false;
  switch (node_->kind) {
    case Kind::True:
    case Kind::False:
    case Kind::Var:
      return true;
    case Kind::Diamond:
    case Kind::Box:
      return left() == other.left();
    case Kind::And:
    case Kind::Or:
      return left() == other.left() && right() == other.right();
  }
  return false;
}

namespace {

void validate_formula(const Hml& f, const Alphabet& alphabet,
                      const std::vector<std::string>& vars) {
  switch (f.kind()) {
    case Hml::Kind::True:
    case Hml::Kind::False:
      return;
    case Hml::Kind::Var:
      if (!std::binary_search(vars.begin(), vars.end(), f.name()))
        throw InvalidValue("undeclared variable '" + f.name() + "'");
      return;
    case Hml::Kind::Diamond:
    case Hml::Kind::Box:
      if (!alphabet.contains(f.label()))
        throw InvalidValue("undeclared label '" + f.label() + "'");
      validate_formula(f.left(), alphabet, vars);
      return;
    case Hml::Kind::And:
    case Hml::Kind::Or:
      validate_formula(f.left(), alphabet, vars);
      validate_formula(f.right(), alphabet, vars);
      return;
  }
}

}  // namespace

Hmlr::Hmlr(Alphabet alphabet, std::vector<std::string> vars,
           std::vector<std::string> initials, std::map<std::string, Hml> decl)
    : alphabet_(std::move(alphabet)),
      vars_(std::move(vars)),
      initials_(std::move(initials)),
      decl_(std::move(decl)) {
  std::sort(vars_.begin(), vars_.end());
  if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
    throw InvalidValue("duplicate variable name");
  for (const std::string& v : vars_)
    if (!is_valid_name(v))
      throw InvalidValue("invalid variable name '" + v + "'");
  std::sort(initials_.begin(), initials_.end());
  initials_.erase(std::unique(initials_.begin(), initials_.end()),
                  initials_.end());
  for (const std::string& v : initials_)
    if (!std::binary_search(vars_.begin(), vars_.end(), v))
      throw InvalidValue("initial variable '" + v + "' is not declared");
  if (decl_.size() != vars_.size())
    throw InvalidValue("declaration map must cover exactly the variables");
  for (const auto& [v, body] : decl_) {
    if (!std::binary_search(vars_.begin(), vars_.end(), v))
      throw InvalidValue("declaration for undeclared variable '" + v + "'");
    validate_formula(body, alphabet_, vars_);
  }
}

const Hml& Hmlr::decl(const std::string& var) const {
  auto it = decl_.find(var);
  if (it == decl_.end())
    throw InvalidValue("no declaration for variable '" + var + "'");
  return it->second;
}

bool Hmlr::operator==(const Hmlr& other) const {
  return alphabet_ == other.alphabet_ && vars_ == other.vars_ &&
         initials_ == other.initials_ && decl_ == other.decl_;
}

namespace {

bool eval_at(const Hml& f, const Lts& m, int state,
             const std::vector<std::vector<char>>& hold,
             const std::map<std::string, int>& var_index) {
  switch (f.kind()) {
    case Hml::Kind::True:
      return true;
    case Hml::Kind::False:
      return false;
    case Hml::Kind::And:
      return eval_at(f.left(), m, state, hold, var_index) &&
             eval_at(f.right(), m, state, hold, var_index);
    case Hml::Kind::Or:
      return eval_at(f.left(), m, state, hold, var_index) ||
             eval_at(f.right(), m, state, hold, var_index);
    case Hml::Kind::Diamond: {
      int a = m.alphabet().index(f.label());
      for (int t : m.successors(state, a))
        if (eval_at(f.left(), m, t, hold, var_index)) return true;
      return false;
    }
    case Hml::Kind::Box: {
      int a = m.alphabet().index(f.label());
      for (int t : m.successors(state, a))
        if (!eval_at(f.left(), m, t, hold, var_index)) return false;
      return true;
    }
    case Hml::Kind::Var:
      return hold[state][var_index.at(f.name())] != 0;
  }
  return false;
}

}  // namespace

SatRelation eval_step(const Lts& m, const Hmlr& h, const SatRelation& r) {
  require_same_alphabet(m.alphabet(), h.alphabet(), "eval_step");

  std::map<std::string, int> var_index;
  for (int i = 0; i < static_cast<int>(h.vars().size()); ++i)
    var_index[h.vars()[i]] = i;

  std::vector<std::vector<char>> hold(
      m.num_states(), std::vector<char>(h.vars().size(), 0));
  for (const auto& [s, x] : r.pairs) {
    int si = m.state_index(s);
    auto xi = var_index.find(x);
    if (si < 0 || xi == var_index.end())
      throw PreconditionError("eval_step: pair (" + s + ", " + x +
                              ") is outside states x vars");
    hold[si][xi->second] = 1;
  }

  SatRelation out;
  for (const auto& [s, x] : r.pairs) {
    int si = m.state_index(s);
    if (eval_at(h.decl(x), m, si, hold, var_index)) out.pairs.emplace(s, x);
  }
  return out;
}

bool check_hml(const Lts& m, const Hmlr& h) {
  require_same_alphabet(m.alphabet(), h.alphabet(), "check_hml");

  SatRelation r;
  for (const std::string& s : m.states())
    for (const std::string& x : h.vars()) r.pairs.emplace(s, x);
  for (;;) {
    SatRelation next = eval_step(m, h, r);
    if (next == r) break;
    r = std::move(next);
  }

  const std::string& init = m.state_name(m.initial());
  for (const std::string& x : h.initials())
    if (r.pairs.count({init, x})) return true;
  return false;
}

namespace {

struct Flattener {
  const std::vector<std::string>& vars;
  std::vector<std::pair<std::string, Hml>> fresh;  // (name, body), in order
  std::set<std::string> used;
  int counter = 1;

  std::string fresh_name() {
    for (;; ++counter) {
      std::string name = "_" + std::to_string(counter);
      if (!used.count(name)) {
        used.insert(name);
        return name;
      }
    }
  }

  Hml walk(const Hml& f) {
    switch (f.kind()) {
      case Hml::Kind::True:
      case Hml::Kind::False:
      case Hml::Kind::Var:
        return f;
      case Hml::Kind::And:
        return Hml::conj(walk(f.left()), walk(f.right()));
      case Hml::Kind::Or:
        return Hml::disj(walk(f.left()), walk(f.right()));
      case Hml::Kind::Diamond:
      case Hml::Kind::Box: {
        Hml arg = f.left();
        if (arg.kind() != Hml::Kind::Var) {
          std::string name = fresh_name();
          // The fresh body may itself contain nested modalities; flatten it
          // after recording the name so numbering follows pre-order.
          fresh.emplace_back(name, Hml::tt());
          size_t slot = fresh.size() - 1;
          fresh[slot].second = walk(arg);
          arg = Hml::var(name);
        }
        return f.kind() == Hml::Kind::Diamond ? Hml::dia(f.label(), arg)
                                              : Hml::box(f.label(), arg);
      }
    }
    return f;
  }
};

}  // namespace

Hmlr flatten(const Hmlr& h) {
  Flattener fl{h.vars(), {}, {h.vars().begin(), h.vars().end()}, 1};

  std::map<std::string, Hml> decl;
  for (const std::string& v : h.vars()) decl.emplace(v, fl.walk(h.decl(v)));

  std::vector<std::string> vars = h.vars();
  for (auto& [name, body] : fl.fresh) {
    vars.push_back(name);
    decl.emplace(name, std::move(body));
  }
  return Hmlr(h.alphabet(), std::move(vars), h.initials(), std::move(decl));
}

namespace {

// Variables referenced outside any modality.
void toplevel_refs(const Hml& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Hml::Kind::Var:
      out.insert(f.name());
      return;
    case Hml::Kind::And:
    case Hml::Kind::Or:
      toplevel_refs(f.left(), out);
      toplevel_refs(f.right(), out);
      return;
    default:
      return;
  }
}

}  // namespace

bool is_guarded(const Hmlr& h) {
  std::map<std::string, std::set<std::string>> edges;
  for (const std::string& v : h.vars()) toplevel_refs(h.decl(v), edges[v]);

  // Guarded iff the top-level reference graph is acyclic.
  std::map<std::string, int> mark;  // 0 unvisited, 1 in progress, 2 done
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    int& m = mark[v];
    if (m == 1) return false;
    if (m == 2) return true;
    m = 1;
    for (const std::string& w : edges[v])
      if (!dfs(w)) return false;
    m = 2;
    return true;
  };
  for (const std::string& v : h.vars())
    if (!dfs(v)) return false;
  return true;
}

}  // namespace modal
