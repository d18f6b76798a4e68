#include "modal/generate.hpp"

#include <algorithm>

namespace modal {

namespace {

std::uint64_t splitmix_step(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() { return splitmix_step(state_); }

int Rng::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

int Rng::range(int lo, int hi) { return lo + below(hi - lo + 1); }

bool Rng::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return (next() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t Rng::mix(std::uint64_t seed, const std::string& tag,
                       std::uint64_t index) {
  std::uint64_t h = seed;
  for (unsigned char c : tag) {
    h ^= c;
    splitmix_step(h);
  }
  h ^= index * 0x9e3779b97f4a7c15ull;
  splitmix_step(h);
  return h;
}

void GenConfig::validate() const {
  if (alphabet.size() < 1 || alphabet.size() > 3)
    throw PreconditionError("generator alphabet size must be 1..3");
  if (max_vars < 1 || max_vars > 4)
    throw PreconditionError("generator max_vars must be 1..4");
  if (max_states < 1 || max_states > 4)
    throw PreconditionError("generator max_states must be 1..4");
  if (dia_density < 0.0 || dia_density > 1.0 || box_density < 0.0 ||
      box_density > 1.0)
    throw PreconditionError("generator densities must lie in [0, 1]");
  if (cases < 0) throw PreconditionError("generator case count must be >= 0");
}

namespace {

std::vector<std::string> numbered(const char* prefix, int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return names;
}

}  // namespace

Lts gen_lts(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(Rng::mix(cfg.seed, "lts", index));
  int n = rng.range(1, cfg.max_states);
  std::vector<std::string> states = numbered("s", n);
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < cfg.alphabet.size(); ++a)
      for (int t = 0; t < n; ++t)
        if (rng.chance(cfg.box_density))
          trans.emplace_back(states[s], cfg.alphabet.label(a), states[t]);
  return Lts(cfg.alphabet, states, states[0], trans);
}

Lts gen_det_lts(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(Rng::mix(cfg.seed, "det-lts", index));
  int n = rng.range(1, cfg.max_states);
  std::vector<std::string> states = numbered("s", n);
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < cfg.alphabet.size(); ++a)
      if (rng.chance(cfg.box_density))
        trans.emplace_back(states[s], cfg.alphabet.label(a),
                           states[rng.below(n)]);
  return Lts(cfg.alphabet, states, states[0], trans);
}

NormalForm gen_nf(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(Rng::mix(cfg.seed, "nf", index));
  int n = rng.range(1, cfg.max_vars);
  int nl = cfg.alphabet.size();
  std::vector<std::string> vars = numbered("v", n);

  std::vector<std::vector<std::vector<int>>> boxes(
      n, std::vector<std::vector<int>>(nl));
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < nl; ++a)
      for (int y = 0; y < n; ++y)
        if (rng.chance(cfg.box_density)) boxes[v][a].push_back(y);

  std::vector<std::vector<DiamondSet>> diamonds(n);
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<int, int>> may;
    for (int a = 0; a < nl; ++a)
      for (int y : boxes[v][a]) may.emplace_back(a, y);
    if (may.empty()) continue;
    for (int trial = 0; trial < 3; ++trial) {
      if (!rng.chance(cfg.dia_density)) continue;
      DiamondSet set;
      for (const auto& p : may)
        if (rng.chance(cfg.dia_density)) set.push_back(p);
      // Keep every requirement satisfiable: an empty pick gets one element.
      if (set.empty()) set.push_back(may[rng.below(static_cast<int>(may.size()))]);
      diamonds[v].push_back(std::move(set));
    }
  }

  std::vector<int> initials;
  for (int v = 0; v < n; ++v)
    if (rng.chance(0.5)) initials.push_back(v);
  if (initials.empty() && !rng.chance(0.1)) initials.push_back(rng.below(n));

  return NormalForm(cfg.alphabet, vars, initials, std::move(diamonds),
                    std::move(boxes));
}

NormalForm gen_det_nf(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(Rng::mix(cfg.seed, "det-nf", index));
  int n = rng.range(1, cfg.max_vars);
  int nl = cfg.alphabet.size();
  std::vector<std::string> vars = numbered("v", n);

  std::vector<std::vector<std::vector<int>>> boxes(
      n, std::vector<std::vector<int>>(nl));
  for (int v = 0; v < n; ++v)
    for (int a = 0; a < nl; ++a)
      if (rng.chance(cfg.box_density)) boxes[v][a].push_back(rng.below(n));

  std::vector<std::vector<DiamondSet>> diamonds(n);
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<int, int>> may;
    for (int a = 0; a < nl; ++a)
      for (int y : boxes[v][a]) may.emplace_back(a, y);
    if (may.empty()) continue;
    for (int trial = 0; trial < 2; ++trial) {
      if (!rng.chance(cfg.dia_density)) continue;
      DiamondSet set;
      for (const auto& p : may)
        if (rng.chance(cfg.dia_density)) set.push_back(p);
      if (set.empty()) set.push_back(may[rng.below(static_cast<int>(may.size()))]);
      diamonds[v].push_back(std::move(set));
    }
  }

  std::vector<int> initials{0};
  return NormalForm(cfg.alphabet, vars, initials, std::move(diamonds),
                    std::move(boxes));
}

namespace {

Hml gen_body(Rng& rng, const GenConfig& cfg, int self, int nvars, int depth,
             bool boolean_level) {
  // At the boolean level only higher-numbered variables may be referenced,
  // which keeps the system guarded by construction.
  int kind = rng.below(10);
  if (depth == 0) kind = rng.below(3);  // leaf kinds only
  switch (kind) {
    case 0:
      return Hml::tt();
    case 1:
      return Hml::ff();
    case 2: {
      if (boolean_level) {
        if (self + 1 < nvars)
          return Hml::var("x" + std::to_string(rng.range(self + 1, nvars - 1)));
        return rng.chance(0.5) ? Hml::tt() : Hml::ff();
      }
      return Hml::var("x" + std::to_string(rng.below(nvars)));
    }
    case 3:
    case 4:
      return Hml::conj(gen_body(rng, cfg, self, nvars, depth - 1, boolean_level),
                       gen_body(rng, cfg, self, nvars, depth - 1, boolean_level));
    case 5:
    case 6:
      return Hml::disj(gen_body(rng, cfg, self, nvars, depth - 1, boolean_level),
                       gen_body(rng, cfg, self, nvars, depth - 1, boolean_level));
    case 7:
    case 8: {
      std::string label = cfg.alphabet.label(rng.below(cfg.alphabet.size()));
      return Hml::dia(label, gen_body(rng, cfg, self, nvars, depth - 1, false));
    }
    default: {
      std::string label = cfg.alphabet.label(rng.below(cfg.alphabet.size()));
      return Hml::box(label, gen_body(rng, cfg, self, nvars, depth - 1, false));
    }
  }
}

}  // namespace

Hmlr gen_hmlr(const GenConfig& cfg, std::uint64_t index) {
  cfg.validate();
  Rng rng(Rng::mix(cfg.seed, "hmlr", index));
  int n = rng.range(1, cfg.max_vars);
  std::vector<std::string> vars = numbered("x", n);

  std::map<std::string, Hml> decl;
  for (int v = 0; v < n; ++v)
    decl.emplace(vars[v], gen_body(rng, cfg, v, n, 3, true));

  std::vector<std::string> initials;
  for (int v = 0; v < n; ++v)
    if (rng.chance(0.5)) initials.push_back(vars[v]);
  if (initials.empty() && !rng.chance(0.1)) initials.push_back(vars[rng.below(n)]);

  return Hmlr(cfg.alphabet, vars, initials, std::move(decl));
}

NormalForm gen_strengthening(const NormalForm& s, std::uint64_t seed) {
  Rng rng(Rng::mix(seed, "stronger", 0));
  int nl = s.alphabet().size();

  std::vector<std::vector<DiamondSet>> diamonds;
  std::vector<std::vector<std::vector<int>>> boxes;
  for (int v = 0; v < s.num_vars(); ++v) {
    diamonds.push_back(s.diamonds(v));
    std::vector<std::vector<int>> by_label;
    std::vector<std::pair<int, int>> may;
    for (int a = 0; a < nl; ++a) {
      by_label.push_back(s.boxes(v, a));
      for (int y : s.boxes(v, a)) may.emplace_back(a, y);
    }
    boxes.push_back(std::move(by_label));
    if (!may.empty() && rng.chance(0.6)) {
      DiamondSet extra;
      for (const auto& p : may)
        if (rng.chance(0.5)) extra.push_back(p);
      if (extra.empty()) extra.push_back(may[rng.below(static_cast<int>(may.size()))]);
      diamonds[v].push_back(std::move(extra));
    }
  }

  std::vector<int> initials;
  for (int i : s.initials())
    if (!rng.chance(0.25)) initials.push_back(i);

  return NormalForm(s.alphabet(), s.vars(), std::move(initials),
                    std::move(diamonds), std::move(boxes));
}

}  // namespace modal
