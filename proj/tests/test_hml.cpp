#include "doctest.h"
#include "modal/generate.hpp"
#include "test_util.hpp"

using namespace modal;
using namespace modal::testing;

namespace {

const Alphabet kAB({"a", "b"});

Hmlr single_var(const Alphabet& alphabet, Hml body,
                std::vector<std::string> initials = {"x"}) {
  std::map<std::string, Hml> decl;
  decl.emplace("x", std::move(body));
  return Hmlr(alphabet, {"x"}, std::move(initials), std::move(decl));
}

SatRelation full_relation(const Lts& m, const Hmlr& h) {
  SatRelation r;
  for (const std::string& s : m.states())
    for (const std::string& x : h.vars()) r.pairs.emplace(s, x);
  return r;
}

}  // namespace

TEST_CASE("eval_step basics") {
  Lts loop = single_loop(kAB, "a");

  SUBCASE("empty relation stays empty") {
    Hmlr h = single_var(kAB, Hml::dia("a", Hml::var("x")));
    CHECK(eval_step(loop, h, SatRelation{}).pairs.empty());
  }
  SUBCASE("self-sustaining diamond") {
    Hmlr h = single_var(kAB, Hml::dia("a", Hml::var("x")));
    SatRelation r{{{"s", "x"}}};
    CHECK(eval_step(loop, h, r) == r);
  }
  SUBCASE("unavailable label empties the pair") {
    Hmlr h = single_var(kAB, Hml::dia("b", Hml::var("x")));
    SatRelation r{{{"s", "x"}}};
    CHECK(eval_step(loop, h, r).pairs.empty());
  }
  SUBCASE("stray pair is rejected") {
    Hmlr h = single_var(kAB, Hml::tt());
    SatRelation r{{{"nosuch", "x"}}};
    CHECK_THROWS_AS((void)eval_step(loop, h, r), PreconditionError);
  }
}

TEST_CASE("check_hml basics") {
  Lts loop = single_loop(kAB, "a");
  CHECK(check_hml(loop, single_var(kAB, Hml::dia("a", Hml::var("x")))));
  CHECK(check_hml(loop, single_var(kAB, Hml::box("b", Hml::ff()))));
  CHECK_FALSE(check_hml(loop, single_var(kAB, Hml::dia("b", Hml::tt()))));
}

TEST_CASE("check_hml: no initial variable means false") {
  GenConfig cfg;
  cfg.seed = 23;
  for (int i = 0; i < 30; ++i) {
    Hmlr h = gen_hmlr(cfg, i);
    Hmlr no_init(h.alphabet(), h.vars(), {}, h.decls());
    CHECK_FALSE(check_hml(gen_lts(cfg, i), no_init));
  }
}

TEST_CASE("eval_step is monotone and the chain is short") {
  GenConfig cfg;
  cfg.seed = 29;
  for (int i = 0; i < 40; ++i) {
    Lts m = gen_lts(cfg, i);
    Hmlr h = gen_hmlr(cfg, i);
    SatRelation big = full_relation(m, h);

    // Sub-relation: drop every other pair.
    SatRelation small;
    int k = 0;
    for (const auto& p : big.pairs)
      if (k++ % 2 == 0) small.pairs.insert(p);

    SatRelation big_step = eval_step(m, h, big);
    SatRelation small_step = eval_step(m, h, small);
    bool contained =
        std::includes(big_step.pairs.begin(), big_step.pairs.end(),
                      small_step.pairs.begin(), small_step.pairs.end());
    CHECK(contained);

    // The descending chain stabilizes within |states| * |vars| steps.
    SatRelation r = big;
    int steps = 0;
    for (;;) {
      SatRelation next = eval_step(m, h, r);
      if (next == r) break;
      r = next;
      ++steps;
    }
    CHECK(steps <= m.num_states() * static_cast<int>(h.vars().size()));
  }
}

TEST_CASE("flatten") {
  SUBCASE("already flat is unchanged") {
    Hmlr h = single_var(kAB, Hml::dia("a", Hml::var("x")));
    CHECK(flatten(h) == h);
  }
  SUBCASE("nested diamond introduces one fresh variable") {
    Hmlr h = single_var(kAB, Hml::dia("a", Hml::dia("b", Hml::tt())));
    Hmlr f = flatten(h);
    REQUIRE(f.vars() == std::vector<std::string>{"_1", "x"});
    CHECK(f.decl("x") == Hml::dia("a", Hml::var("_1")));
    CHECK(f.decl("_1") == Hml::dia("b", Hml::tt()));
  }
  SUBCASE("boolean argument is extracted") {
    std::map<std::string, Hml> decl;
    decl.emplace("x", Hml::box("a", Hml::disj(Hml::var("x"), Hml::var("y"))));
    decl.emplace("y", Hml::tt());
    Hmlr h(kAB, {"x", "y"}, {"x"}, decl);
    Hmlr f = flatten(h);
    CHECK(f.decl("x") == Hml::box("a", Hml::var("_1")));
    CHECK(f.decl("_1") == Hml::disj(Hml::var("x"), Hml::var("y")));
  }
}

TEST_CASE("flatten preserves the verdict") {
  GenConfig cfg;
  cfg.seed = 31;
  for (int i = 0; i < 100; ++i) {
    Lts m = gen_lts(cfg, i);
    Hmlr h = gen_hmlr(cfg, i);
    CHECK(check_hml(m, h) == check_hml(m, flatten(h)));
  }
}

TEST_CASE("is_guarded") {
  CHECK(is_guarded(single_var(kAB, Hml::dia("a", Hml::var("x")))));
  CHECK_FALSE(is_guarded(single_var(kAB, Hml::var("x"))));

  // Boolean reference cycle through two variables.
  std::map<std::string, Hml> decl;
  decl.emplace("x", Hml::conj(Hml::var("y"), Hml::dia("a", Hml::var("x"))));
  decl.emplace("y", Hml::var("x"));
  CHECK_FALSE(is_guarded(Hmlr(kAB, {"x", "y"}, {"x"}, decl)));

  // The same shape without the cycle is fine.
  std::map<std::string, Hml> decl2;
  decl2.emplace("x", Hml::conj(Hml::var("y"), Hml::dia("a", Hml::var("x"))));
  decl2.emplace("y", Hml::box("b", Hml::tt()));
  CHECK(is_guarded(Hmlr(kAB, {"x", "y"}, {"x"}, decl2)));
}

TEST_CASE("generated formulas are guarded after flattening") {
  GenConfig cfg;
  cfg.seed = 37;
  for (int i = 0; i < 100; ++i) CHECK(is_guarded(flatten(gen_hmlr(cfg, i))));
}
