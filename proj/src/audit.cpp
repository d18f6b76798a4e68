#include "modal/audit.hpp"

#include <algorithm>
#include <functional>

#include "modal/io.hpp"

namespace modal {

std::string flag_text(Flag f) {
  switch (f) {
    case Flag::Yes:
      return "yes";
    case Flag::Partial:
      return "partial";
    default:
      return "no";
  }
}

SuiteOps SuiteOps::standard() {
  SuiteOps ops;
  ops.conj_op = [](const NormalForm& a, const NormalForm& b) {
    return conj(a, b);
  };
  ops.disj_op = [](const NormalForm& a, const NormalForm& b) {
    return disj(a, b);
  };
  ops.compose_op = [](const NormalForm& a, const NormalForm& b) {
    return compose(a, b);
  };
  return ops;
}

const std::vector<std::string> kSuiteIds = {
    "preorder", "lattice", "semigroup", "unital",
    "residuation", "bounds", "probe"};

namespace {

// ---------------------------------------------------------------------------
// Counterexample shrinking: greedy deletion of initials, diamond sets,
// diamond elements, box targets, and whole variables while the law still
// fails.
// ---------------------------------------------------------------------------

NormalForm drop_variable(const NormalForm& s, int victim) {
  std::vector<std::string> vars;
  std::vector<int> remap(s.num_vars(), -1);
  for (int v = 0; v < s.num_vars(); ++v) {
    if (v == victim) continue;
    remap[v] = static_cast<int>(vars.size());
    vars.push_back(s.var_name(v));
  }
  std::vector<int> initials;
  for (int i : s.initials())
    if (i != victim) initials.push_back(remap[i]);
  std::vector<std::vector<DiamondSet>> diamonds;
  std::vector<std::vector<std::vector<int>>> boxes;
  for (int v = 0; v < s.num_vars(); ++v) {
    if (v == victim) continue;
    std::vector<DiamondSet> family;
    for (const DiamondSet& n : s.diamonds(v)) {
      DiamondSet nn;
      for (const auto& [a, y] : n)
        if (y != victim) nn.emplace_back(a, remap[y]);
      family.push_back(std::move(nn));
    }
    diamonds.push_back(std::move(family));
    std::vector<std::vector<int>> by_label;
    for (int a = 0; a < s.alphabet().size(); ++a) {
      std::vector<int> targets;
      for (int y : s.boxes(v, a))
        if (y != victim) targets.push_back(remap[y]);
      by_label.push_back(std::move(targets));
    }
    boxes.push_back(std::move(by_label));
  }
  return NormalForm(s.alphabet(), vars, initials, std::move(diamonds),
                    std::move(boxes));
}

std::vector<NormalForm> one_step_shrinks(const NormalForm& s) {
  std::vector<NormalForm> out;
  int nl = s.alphabet().size();
  auto copy_tables = [&](std::vector<std::vector<DiamondSet>>& diamonds,
                         std::vector<std::vector<std::vector<int>>>& boxes) {
    for (int v = 0; v < s.num_vars(); ++v) {
      diamonds.push_back(s.diamonds(v));
      std::vector<std::vector<int>> by_label;
      for (int a = 0; a < nl; ++a) by_label.push_back(s.boxes(v, a));
      boxes.push_back(std::move(by_label));
    }
  };

  for (int v = 0; v < s.num_vars(); ++v) out.push_back(drop_variable(s, v));

  for (size_t drop = 0; drop < s.initials().size(); ++drop) {
    std::vector<int> initials;
    for (size_t i = 0; i < s.initials().size(); ++i)
      if (i != drop) initials.push_back(s.initials()[i]);
    std::vector<std::vector<DiamondSet>> diamonds;
    std::vector<std::vector<std::vector<int>>> boxes;
    copy_tables(diamonds, boxes);
    out.emplace_back(s.alphabet(), s.vars(), initials, std::move(diamonds),
                     std::move(boxes));
  }

  for (int v = 0; v < s.num_vars(); ++v) {
    for (size_t drop = 0; drop < s.diamonds(v).size(); ++drop) {
      std::vector<std::vector<DiamondSet>> diamonds;
      std::vector<std::vector<std::vector<int>>> boxes;
      copy_tables(diamonds, boxes);
      diamonds[v].erase(diamonds[v].begin() + drop);
      out.emplace_back(s.alphabet(), s.vars(), s.initials(),
                       std::move(diamonds), std::move(boxes));
    }
    for (size_t set_idx = 0; set_idx < s.diamonds(v).size(); ++set_idx) {
      for (size_t e = 0; e < s.diamonds(v)[set_idx].size(); ++e) {
        std::vector<std::vector<DiamondSet>> diamonds;
        std::vector<std::vector<std::vector<int>>> boxes;
        copy_tables(diamonds, boxes);
        diamonds[v][set_idx].erase(diamonds[v][set_idx].begin() + e);
        out.emplace_back(s.alphabet(), s.vars(), s.initials(),
                         std::move(diamonds), std::move(boxes));
      }
    }
    for (int a = 0; a < nl; ++a) {
      for (int y : s.boxes(v, a)) {
        std::vector<std::vector<DiamondSet>> diamonds;
        std::vector<std::vector<std::vector<int>>> boxes;
        copy_tables(diamonds, boxes);
        auto& targets = boxes[v][a];
        targets.erase(std::find(targets.begin(), targets.end(), y));
        for (DiamondSet& n : diamonds[v])
          n.erase(std::remove(n.begin(), n.end(), std::make_pair(a, y)),
                  n.end());
        out.emplace_back(s.alphabet(), s.vars(), s.initials(),
                         std::move(diamonds), std::move(boxes));
      }
    }
  }
  return out;
}

using Operands = std::vector<NormalForm>;
using FailurePredicate = std::function<bool(const Operands&)>;

bool still_fails(const FailurePredicate& fails, const Operands& ops) {
  try {
    return fails(ops);
  } catch (const Error&) {
    return false;  // an edit that breaks a precondition is not a shrink
  }
}

Operands shrink(Operands ops, const FailurePredicate& fails) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t i = 0; i < ops.size() && !improved; ++i) {
      for (NormalForm& cand : one_step_shrinks(ops[i])) {
        Operands trial = ops;
        trial[i] = std::move(cand);
        if (still_fails(fails, trial)) {
          ops = std::move(trial);
          improved = true;
          break;
        }
      }
    }
  }
  return ops;
}

std::string render_counterexample(const Operands& ops) {
  std::string out;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (i) out += "---\n";
    out += serialize(ops[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Law table
// ---------------------------------------------------------------------------

struct Law {
  std::string suite;
  std::string id;
  bool informative = false;
  int cases_override = -1;  // -1: use cfg.cases
  std::function<Operands(const GenConfig&, std::uint64_t)> make_case;
  FailurePredicate fails;
};

// Operand size cap for the laws that chain compositions and quotients.
GenConfig chain_cfg(const GenConfig& cfg) {
  GenConfig small = cfg;
  small.max_vars = std::min(cfg.max_vars, 2);
  small.box_density = cfg.box_density * 0.75;
  return small;
}

std::uint64_t case_seed(const GenConfig& cfg, const std::string& law_id,
                        std::uint64_t index, std::uint64_t slot) {
  return Rng::mix(Rng::mix(cfg.seed, law_id, index), "slot", slot);
}

NormalForm law_nf(const GenConfig& cfg, const std::string& law_id,
                  std::uint64_t index, std::uint64_t slot) {
  GenConfig local = cfg;
  local.seed = case_seed(cfg, law_id, index, slot);
  return gen_nf(local, 0);
}

NormalForm law_det_nf(const GenConfig& cfg, const std::string& law_id,
                      std::uint64_t index, std::uint64_t slot) {
  GenConfig local = cfg;
  local.seed = case_seed(cfg, law_id, index, slot);
  return gen_det_nf(local, 0);
}

bool refinement_holds(const NormalForm& a, const NormalForm& b) {
  return refines(a, b).has_value();
}

std::vector<Law> law_table(const SuiteOps& ops, const AuditOptions& opts) {
  std::vector<Law> laws;
  auto add = [&](Law law) { laws.push_back(std::move(law)); };

  // --- preorder ---
  add({"preorder", "refines-refl", false, -1,
       [](const GenConfig& cfg, std::uint64_t i) {
         return Operands{law_nf(cfg, "refines-refl", i, 0)};
       },
       [](const Operands& o) { return !refinement_holds(o[0], o[0]); }});
  add({"preorder", "refines-trans", false, -1,
       [](const GenConfig& cfg, std::uint64_t i) {
         NormalForm s3 = law_nf(cfg, "refines-trans", i, 0);
         NormalForm s2 = gen_strengthening(s3, case_seed(cfg, "refines-trans", i, 1));
         NormalForm s1 = gen_strengthening(s2, case_seed(cfg, "refines-trans", i, 2));
         return Operands{s1, s2, s3};
       },
       [](const Operands& o) {
         return refinement_holds(o[0], o[1]) && refinement_holds(o[1], o[2]) &&
                !refinement_holds(o[0], o[2]);
       }});

  // --- lattice: conjunction side ---
  add({"lattice", "glb-iff", false, -1,
       [&ops](const GenConfig& cfg, std::uint64_t i) {
         NormalForm s1 = law_nf(cfg, "glb-iff", i, 1);
         NormalForm s2 = law_nf(cfg, "glb-iff", i, 2);
         NormalForm s = (i % 2 == 0)
                            ? gen_strengthening(ops.conj_op(s1, s2),
                                                case_seed(cfg, "glb-iff", i, 3))
                            : law_nf(cfg, "glb-iff", i, 0);
         return Operands{s, s1, s2};
       },
       [&ops](const Operands& o) {
         bool lhs = refinement_holds(o[0], ops.conj_op(o[1], o[2]));
         bool rhs = refinement_holds(o[0], o[1]) && refinement_holds(o[0], o[2]);
         return lhs != rhs;
       }});
  add({"lattice", "top-conj-unit", false, -1,
       [](const GenConfig& cfg, std::uint64_t i) {
         return Operands{law_nf(cfg, "top-conj-unit", i, 0)};
       },
       [&ops](const Operands& o) {
         return !mod_equiv(ops.conj_op(top(o[0].alphabet()), o[0]), o[0]);
       }});
  add({"lattice", "bot-conj-zero", false, -1,
       [](const GenConfig& cfg, std::uint64_t i) {
         return Operands{law_nf(cfg, "bot-conj-zero", i, 0)};
       },
       [&ops](const Operands& o) {
         return !mod_equiv(ops.conj_op(bottom(o[0].alphabet()), o[0]),
                           bottom(o[0].alphabet()));
       }});

  if (opts.with_disj) {
    add({"lattice", "lub-iff", false, -1,
         [&ops](const GenConfig& cfg, std::uint64_t i) {
           NormalForm s1 = law_nf(cfg, "lub-iff", i, 1);
           NormalForm s2 = law_nf(cfg, "lub-iff", i, 2);
           NormalForm s = (i % 2 == 0)
                              ? ops.disj_op(s1, ops.disj_op(s2, law_nf(cfg, "lub-iff", i, 3)))
                              : law_nf(cfg, "lub-iff", i, 0);
           return Operands{s, s1, s2};
         },
         [&ops](const Operands& o) {
           bool lhs = refinement_holds(ops.disj_op(o[1], o[2]), o[0]);
           bool rhs = refinement_holds(o[1], o[0]) && refinement_holds(o[2], o[0]);
           return lhs != rhs;
         }});
    add({"lattice", "conj-distrib-disj", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           return Operands{law_nf(cfg, "conj-distrib-disj", i, 0),
                           law_nf(cfg, "conj-distrib-disj", i, 1),
                           law_nf(cfg, "conj-distrib-disj", i, 2)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(
               ops.conj_op(o[0], ops.disj_op(o[1], o[2])),
               ops.disj_op(ops.conj_op(o[0], o[1]), ops.conj_op(o[0], o[2])));
         }});
    add({"lattice", "disj-distrib-conj", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           return Operands{law_nf(cfg, "disj-distrib-conj", i, 0),
                           law_nf(cfg, "disj-distrib-conj", i, 1),
                           law_nf(cfg, "disj-distrib-conj", i, 2)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(
               ops.disj_op(o[0], ops.conj_op(o[1], o[2])),
               ops.conj_op(ops.disj_op(o[0], o[1]), ops.disj_op(o[0], o[2])));
         }});
    add({"lattice", "bot-disj-unit", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           return Operands{law_nf(cfg, "bot-disj-unit", i, 0)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(ops.disj_op(bottom(o[0].alphabet()), o[0]), o[0]);
         }});
    add({"lattice", "top-disj-zero", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           return Operands{law_nf(cfg, "top-disj-zero", i, 0)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(ops.disj_op(top(o[0].alphabet()), o[0]),
                             top(o[0].alphabet()));
         }});
  }

  if (opts.with_compose) {
    add({"semigroup", "compose-monotone", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           GenConfig small = chain_cfg(cfg);
           NormalForm s2 = law_nf(small, "compose-monotone", i, 0);
           NormalForm s1 =
               gen_strengthening(s2, case_seed(cfg, "compose-monotone", i, 1));
           NormalForm s3 = law_nf(small, "compose-monotone", i, 2);
           return Operands{s1, s2, s3};
         },
         [&ops](const Operands& o) {
           return refinement_holds(o[0], o[1]) &&
                  !refinement_holds(ops.compose_op(o[0], o[2]),
                                    ops.compose_op(o[1], o[2]));
         }});
    add({"semigroup", "independent-implementability", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           GenConfig small = chain_cfg(cfg);
           NormalForm s3 = law_nf(small, "independent-implementability", i, 0);
           NormalForm s4 = law_nf(small, "independent-implementability", i, 1);
           NormalForm s1 = gen_strengthening(
               s3, case_seed(cfg, "independent-implementability", i, 2));
           NormalForm s2 = gen_strengthening(
               s4, case_seed(cfg, "independent-implementability", i, 3));
           return Operands{s1, s2, s3, s4};
         },
         [&ops](const Operands& o) {
           return refinement_holds(o[0], o[2]) && refinement_holds(o[1], o[3]) &&
                  !refinement_holds(ops.compose_op(o[0], o[1]),
                                    ops.compose_op(o[2], o[3]));
         }});
    add({"semigroup", "compose-commutative", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           GenConfig small = chain_cfg(cfg);
           return Operands{law_nf(small, "compose-commutative", i, 0),
                           law_nf(small, "compose-commutative", i, 1)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(ops.compose_op(o[0], o[1]),
                             ops.compose_op(o[1], o[0]));
         }});
    add({"semigroup", "compose-associative", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           GenConfig small = chain_cfg(cfg);
           return Operands{law_nf(small, "compose-associative", i, 0),
                           law_nf(small, "compose-associative", i, 1),
                           law_nf(small, "compose-associative", i, 2)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(
               ops.compose_op(ops.compose_op(o[0], o[1]), o[2]),
               ops.compose_op(o[0], ops.compose_op(o[1], o[2])));
         }});
    add({"semigroup", "compose-bot-zero", false, -1,
         [](const GenConfig& cfg, std::uint64_t i) {
           return Operands{law_nf(chain_cfg(cfg), "compose-bot-zero", i, 0)};
         },
         [&ops](const Operands& o) {
           return !mod_equiv(ops.compose_op(o[0], bottom(o[0].alphabet())),
                             bottom(o[0].alphabet()));
         }});
    if (opts.with_disj) {
      add({"semigroup", "compose-distrib-disj", false, -1,
           [](const GenConfig& cfg, std::uint64_t i) {
             GenConfig small = chain_cfg(cfg);
             return Operands{law_nf(small, "compose-distrib-disj", i, 0),
                             law_nf(small, "compose-distrib-disj", i, 1),
                             law_nf(small, "compose-distrib-disj", i, 2)};
           },
           [&ops](const Operands& o) {
             return !mod_equiv(ops.compose_op(o[0], ops.disj_op(o[1], o[2])),
                               ops.disj_op(ops.compose_op(o[0], o[1]),
                                           ops.compose_op(o[0], o[2])));
           }});
    }

    if (opts.with_unit) {
      add({"unital", "compose-unit", false, -1,
           [](const GenConfig& cfg, std::uint64_t i) {
             return Operands{law_nf(chain_cfg(cfg), "compose-unit", i, 0)};
           },
           [&ops](const Operands& o) {
             return !mod_equiv(
                 ops.compose_op(o[0], naa_to_nf(unit(o[0].alphabet()))), o[0]);
           }});
      add({"unital", "unit-is-chi-of-loop-model", false, 1,
           [](const GenConfig& cfg, std::uint64_t) {
             std::vector<std::tuple<std::string, std::string, std::string>> t;
             for (const std::string& l : cfg.alphabet.labels())
               t.emplace_back("u", l, "u");
             Lts loops(cfg.alphabet, {"u"}, "u", t);
             return Operands{naa_to_nf(unit(cfg.alphabet)), chi(loops)};
           },
           [](const Operands& o) { return !mod_equiv(o[0], o[1]); }});
    }

    if (opts.with_quotient) {
      if (opts.with_disj) {
        add({"residuation", "bounded-galois", false, -1,
             [](const GenConfig& cfg, std::uint64_t i) {
               GenConfig small = chain_cfg(cfg);
               return Operands{law_nf(small, "bounded-galois", i, 0),
                               law_nf(small, "bounded-galois", i, 1)};
             },
             [&ops](const Operands& o) {
               const NormalForm& s1 = o[0];
               const NormalForm& s3 = o[1];
               NormalForm q = quotient_bounded(s3, s1, 1);
               for (const NormalForm& x : enumerate_family(s1.alphabet(), 1)) {
                 bool lhs = refinement_holds(ops.compose_op(s1, x), s3);
                 bool rhs = refinement_holds(x, q);
                 if (lhs != rhs) return true;
               }
               return false;
             }});
        add({"bounds", "quotient-by-bot", false, -1,
             [](const GenConfig& cfg, std::uint64_t i) {
               return Operands{law_nf(chain_cfg(cfg), "quotient-by-bot", i, 0)};
             },
             [](const Operands& o) {
               return !mod_equiv(
                   quotient_bounded(o[0], bottom(o[0].alphabet()), 1),
                   top(o[0].alphabet()));
             }});
        add({"bounds", "top-quotient", false, -1,
             [](const GenConfig& cfg, std::uint64_t i) {
               return Operands{law_nf(chain_cfg(cfg), "top-quotient", i, 0)};
             },
             [](const Operands& o) {
               return !mod_equiv(
                   quotient_bounded(top(o[0].alphabet()), o[0], 1),
                   top(o[0].alphabet()));
             }});
      }

      add({"residuation", "det-galois", false, -1,
           [](const GenConfig& cfg, std::uint64_t i) {
             GenConfig small = chain_cfg(cfg);
             return Operands{law_det_nf(small, "det-galois", i, 0),
                             law_det_nf(small, "det-galois", i, 1),
                             law_nf(small, "det-galois", i, 2)};
           },
           [&ops](const Operands& o) {
             Naa a1 = nf_to_naa(o[0]);
             Naa a3 = nf_to_naa(o[1]);
             NormalForm q = naa_to_nf(quotient_det(a3, a1));
             auto mismatch = [&](const NormalForm& x) {
               bool lhs = refinement_holds(ops.compose_op(o[0], x), o[1]);
               bool rhs = refinement_holds(x, q);
               return lhs != rhs;
             };
             if (mismatch(o[2])) return true;
             for (const NormalForm& x : enumerate_family(o[0].alphabet(), 1))
               if (mismatch(x)) return true;
             return false;
           }});
      add({"residuation", "unit-le-quotient", false, -1,
           [](const GenConfig& cfg, std::uint64_t i) {
             GenConfig small = chain_cfg(cfg);
             return Operands{law_det_nf(small, "unit-le-quotient", i, 0),
                             law_det_nf(small, "unit-le-quotient", i, 1)};
           },
           [](const Operands& o) {
             // S1 || (1 // S2) <= S1 // S2
             Naa a1 = nf_to_naa(o[0]);
             Naa a2 = nf_to_naa(o[1]);
             Naa q = quotient_det(unit(o[0].alphabet()), a2);
             NormalForm lhs = naa_to_nf(naa_compose(a1, q));
             NormalForm rhs = naa_to_nf(quotient_det(a1, a2));
             return !refinement_holds(lhs, rhs);
           }});

      struct L8 {
        const char* id;
        // evaluates both sides on deterministic acceptance automata
        std::function<std::pair<NormalForm, NormalForm>(
            const Naa&, const Naa&, const Naa&)>
            sides;
        bool equivalence;
      };
      std::vector<L8> lemma8 = {
          {"lemma8-compose-quotient-le",
           [](const Naa& a1, const Naa& a2, const Naa& a3) {
             return std::pair(naa_to_nf(naa_compose(a1, quotient_det(a2, a3))),
                              naa_to_nf(quotient_det(naa_compose(a1, a2), a3)));
           },
           false},
          {"lemma8-quotient-compose-monotone",
           [](const Naa& a1, const Naa& a2, const Naa& a3) {
             return std::pair(naa_to_nf(quotient_det(a1, a2)),
                              naa_to_nf(quotient_det(naa_compose(a1, a3),
                                                     naa_compose(a2, a3))));
           },
           false},
          {"lemma8-quotient-compose-le",
           [](const Naa& a1, const Naa& a2, const Naa& a3) {
             return std::pair(
                 naa_to_nf(naa_compose(quotient_det(a1, a2),
                                       quotient_det(a2, a3))),
                 naa_to_nf(quotient_det(a1, a3)));
           },
           false},
          {"lemma8-quotient-swap",
           [](const Naa& a1, const Naa& a2, const Naa& a3) {
             return std::pair(
                 naa_to_nf(quotient_det(quotient_det(a1, a2), a3)),
                 naa_to_nf(quotient_det(quotient_det(a1, a3), a2)));
           },
           true},
          {"lemma8-quotient-curry",
           [](const Naa& a1, const Naa& a2, const Naa& a3) {
             return std::pair(
                 naa_to_nf(quotient_det(a1, naa_compose(a2, a3))),
                 naa_to_nf(quotient_det(quotient_det(a1, a2), a3)));
           },
           true},
          {"lemma8-self-absorb",
           [](const Naa& a1, const Naa&, const Naa&) {
             return std::pair(
                 naa_to_nf(naa_compose(a1, quotient_det(a1, a1))),
                 naa_to_nf(a1));
           },
           true},
          {"lemma8-self-idem",
           [](const Naa& a1, const Naa&, const Naa&) {
             Naa q = quotient_det(a1, a1);
             return std::pair(naa_to_nf(naa_compose(q, q)), naa_to_nf(q));
           },
           true},
      };
      for (const L8& law : lemma8) {
        std::string id = law.id;
        auto sides = law.sides;
        bool equivalence = law.equivalence;
        add({"residuation", id, false, -1,
             [id](const GenConfig& cfg, std::uint64_t i) {
               GenConfig small = chain_cfg(cfg);
               return Operands{law_det_nf(small, id, i, 0),
                               law_det_nf(small, id, i, 1),
                               law_det_nf(small, id, i, 2)};
             },
             [sides, equivalence](const Operands& o) {
               auto [lhs, rhs] = sides(nf_to_naa(o[0]), nf_to_naa(o[1]),
                                       nf_to_naa(o[2]));
               if (!refinement_holds(lhs, rhs)) return true;
               return equivalence && !refinement_holds(rhs, lhs);
             }});
      }
    }

    if (opts.with_disj) {
      add({"probe", "compose-conj-distrib", true, -1,
           [](const GenConfig& cfg, std::uint64_t i) {
             GenConfig small = chain_cfg(cfg);
             return Operands{law_nf(small, "compose-conj-distrib", i, 0),
                             law_nf(small, "compose-conj-distrib", i, 1),
                             law_nf(small, "compose-conj-distrib", i, 2)};
           },
           [&ops](const Operands& o) {
             return !mod_equiv(ops.compose_op(o[0], ops.conj_op(o[1], o[2])),
                               ops.conj_op(ops.compose_op(o[0], o[1]),
                                           ops.compose_op(o[0], o[2])));
           }});
    }
  }

  return laws;
}

LawResult run_law(const Law& law, const GenConfig& cfg) {
  LawResult result;
  result.suite = law.suite;
  result.id = law.id;
  result.informative = law.informative;
  int cases = law.cases_override >= 0 ? law.cases_override : cfg.cases;
  result.cases = cases;
  for (int i = 0; i < cases; ++i) {
    Operands ops = law.make_case(cfg, static_cast<std::uint64_t>(i));
    if (still_fails(law.fails, ops)) {
      ++result.failures;
      if (result.counterexample.empty()) {
        Operands minimal = shrink(std::move(ops), law.fails);
        result.counterexample = render_counterexample(minimal);
      }
    }
  }
  return result;
}

}  // namespace

std::vector<LawResult> run_suite(const std::string& suite_id,
                                 const GenConfig& cfg, const SuiteOps& ops,
                                 const AuditOptions& opts) {
  cfg.validate();
  if (std::find(kSuiteIds.begin(), kSuiteIds.end(), suite_id) ==
      kSuiteIds.end())
    throw PreconditionError("unknown suite '" + suite_id + "'");
  std::vector<LawResult> results;
  for (const Law& law : law_table(ops, opts))
    if (law.suite == suite_id) results.push_back(run_law(law, cfg));
  return results;
}

std::pair<std::string, std::string> classify(bool logical, bool compositional,
                                             bool unital, bool complete) {
  struct Node {
    bool l, c, u, q;
    const char* name;
    const char* algebra;
  };
  static const Node nodes[] = {
      {true, false, false, false, "logical", "bounded distributive lattice"},
      {false, true, false, false, "compositional",
       "partially ordered commutative semigroup"},
      {true, true, false, false, "comp. & log.",
       "bounded distributive lattice-ordered commutative semigroup"},
      {false, true, true, false, "unital compositional",
       "partially ordered commutative monoid"},
      {true, true, true, false, "uni. comp. & log.",
       "bounded distributive lattice-ordered commutative monoid"},
      {false, true, false, true, "complete comp.",
       "residuated partially ordered commutative semigroup"},
      {false, true, true, true, "uni. complete comp.",
       "commutative residuated poset"},
      {true, true, false, true, "complete comp. & log.",
       "bounded distributive residuated lattice-ordered commutative semigroup"},
      {true, true, true, true, "uni. complete comp. & log.",
       "bounded distributive commutative residuated lattice"},
  };
  const Node* best = nullptr;
  int best_count = -1;
  for (const Node& n : nodes) {
    if ((n.l && !logical) || (n.c && !compositional) || (n.u && !unital) ||
        (n.q && !complete))
      continue;
    int count = n.l + n.c + n.u + n.q;
    if (count > best_count) {
      best = &n;
      best_count = count;
    }
  }
  if (!best) return {"none", "none"};
  return {best->name, best->algebra};
}

namespace {

std::vector<BlowupRow> blowup_observation(const Alphabet& alphabet) {
  std::vector<BlowupRow> rows;
  for (int n = 1; n <= 6; ++n) {
    // One hub state with n pairwise-disjoint two-element acceptance sets;
    // every minimal requirement picks one element per set.
    std::vector<std::string> states{"s"};
    for (int i = 0; i < 2 * n; ++i) states.push_back("t" + std::to_string(i));
    std::map<std::string,
             std::vector<std::set<std::pair<std::string, std::string>>>>
        tran;
    const std::string& l = alphabet.labels()[0];
    for (int i = 0; i < n; ++i)
      tran["s"].push_back({{l, "t" + std::to_string(2 * i)},
                           {l, "t" + std::to_string(2 * i + 1)}});
    for (int i = 0; i < 2 * n; ++i)
      tran["t" + std::to_string(i)].push_back({});
    Naa a(alphabet, states, std::vector<std::string>{"s"}, tran);

    int tran_sets = 0;
    for (int s = 0; s < a.num_states(); ++s)
      tran_sets += static_cast<int>(a.tran(s).size());
    NormalForm nf = naa_to_nf(a);
    int dia_sets = 0;
    for (int v = 0; v < nf.num_vars(); ++v)
      dia_sets += static_cast<int>(nf.diamonds(v).size());
    rows.push_back({n, tran_sets, nf.num_vars(), dia_sets});
  }
  return rows;
}

bool suite_passed(const std::vector<LawResult>& laws, const std::string& suite) {
  bool found = false;
  for (const LawResult& r : laws)
    if (r.suite == suite && !r.informative) {
      found = true;
      if (r.failures > 0) return false;
    }
  return found;
}

}  // namespace

AuditReport audit(const GenConfig& cfg, const AuditOptions& opts,
                  const SuiteOps& ops) {
  cfg.validate();
  AuditReport report;
  report.seed = cfg.seed;
  report.cases = cfg.cases;
  report.alphabet = cfg.alphabet.labels();
  report.max_states = cfg.max_states;
  report.max_vars = cfg.max_vars;

  for (const std::string& suite : kSuiteIds) {
    std::vector<LawResult> results = run_suite(suite, cfg, ops, opts);
    report.laws.insert(report.laws.end(), results.begin(), results.end());
  }

  bool preorder_ok = suite_passed(report.laws, "preorder");
  bool lattice_ok = suite_passed(report.laws, "lattice");
  bool semigroup_ok = suite_passed(report.laws, "semigroup");
  bool unital_ok = opts.with_unit && opts.with_compose &&
                   suite_passed(report.laws, "unital");
  bool residuation_ok = suite_passed(report.laws, "residuation");
  bool bounds_ok = !opts.with_disj || suite_passed(report.laws, "bounds");

  report.logical = !preorder_ok || !lattice_ok
                       ? Flag::No
                       : (opts.with_disj ? Flag::Yes : Flag::Partial);
  report.compositional =
      preorder_ok && opts.with_compose && semigroup_ok ? Flag::Yes : Flag::No;
  report.unital = report.compositional == Flag::Yes && unital_ok;
  if (report.compositional == Flag::Yes && opts.with_quotient &&
      residuation_ok && bounds_ok) {
    report.complete = opts.with_disj ? Flag::Yes : Flag::Partial;
  } else {
    report.complete = Flag::No;
  }

  auto [name, algebra] = classify(report.logical == Flag::Yes,
                                  report.compositional == Flag::Yes,
                                  report.unital, report.complete == Flag::Yes);
  report.classification = name;
  report.algebra = algebra;
  report.caveat =
      "completeness is certified relative to the bounded candidate family "
      "enumerate_family(alphabet, 1); no claim of unrestricted completeness "
      "is made";

  report.blowup = blowup_observation(cfg.alphabet);
  return report;
}

}  // namespace modal
