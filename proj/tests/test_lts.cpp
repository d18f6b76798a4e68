#include "doctest.h"
#include "modal/generate.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace modal;
using namespace modal::testing;

namespace {
const Alphabet kAB({"a", "b"});
}

TEST_CASE("bisimilar: identity loop") {
  Lts m = single_loop(kAB, "a");
  auto w = bisimilar(m, m);
  REQUIRE(w.has_value());
  CHECK(w->pairs == std::set<std::pair<std::string, std::string>>{{"s", "s"}});
}

TEST_CASE("bisimilar: loop vs two-state cycle") {
  Lts m1 = single_loop(kAB, "a");
  Lts m2 = two_state_cycle(kAB, "a");
  auto w = bisimilar(m1, m2);
  REQUIRE(w.has_value());
  // The deletion never removes a pair here.
  CHECK(w->pairs.size() == 2);
  CHECK(bisim_witness_closed(m1, m2, *w));
}

TEST_CASE("bisimilar: different ready sets") {
  CHECK_FALSE(bisimilar(single_loop(kAB, "a"), single_loop(kAB, "b")));
}

TEST_CASE("bisimilar: alphabet mismatch is an error") {
  Lts m1 = single_loop(kAB, "a");
  Lts m2 = single_loop(Alphabet({"a"}), "a");
  CHECK_THROWS_AS((void)bisimilar(m1, m2), AlphabetMismatch);
}

TEST_CASE("lts_compose: loop with itself") {
  Lts p = lts_compose(single_loop(kAB, "a"), single_loop(kAB, "a"));
  CHECK(p.num_states() == 1);
  CHECK(p.transitions().size() == 1);
  CHECK(p.state_name(0) == "s|s");
}

TEST_CASE("lts_compose: disjoint labels deadlock") {
  Lts p = lts_compose(single_loop(kAB, "a"), single_loop(kAB, "b"));
  CHECK(p.num_states() == 1);
  CHECK(p.transitions().empty());
}

TEST_CASE("lts_compose: only shared behavior survives") {
  // a-loop with an optional b-step, against a plain a-loop.
  Lts m1(kAB, {"s", "t"}, "s", {{"s", "a", "s"}, {"s", "b", "t"}});
  Lts m2 = single_loop(kAB, "a");
  Lts p = lts_compose(m1, m2);
  CHECK(p.num_states() == 1);
  REQUIRE(p.transitions().size() == 1);
  CHECK(p.alphabet().label(p.transitions()[0].label) == "a");
}

TEST_CASE("trim") {
  Lts reachable = single_loop(kAB, "a");
  CHECK(trim(reachable) == reachable);

  Lts with_dead(kAB, {"s", "zombie"}, "s", {{"s", "a", "s"}});
  Lts trimmed = trim(with_dead);
  CHECK(trimmed.num_states() == 1);
  CHECK(trimmed == reachable);

  GenConfig cfg;
  cfg.seed = 7;
  for (int i = 0; i < 50; ++i) {
    Lts p = lts_compose(gen_lts(cfg, 2 * i), gen_lts(cfg, 2 * i + 1));
    CHECK(trim(p) == p);
  }
}

TEST_CASE("bisimilarity is reflexive, symmetric, transitive on samples") {
  GenConfig cfg;
  cfg.seed = 11;
  for (int i = 0; i < 60; ++i) {
    Lts m1 = gen_lts(cfg, 3 * i);
    Lts m2 = i % 2 ? gen_lts(cfg, 3 * i + 1) : clone_state(m1, 1000 + i);
    Lts m3 = i % 3 ? gen_lts(cfg, 3 * i + 2) : clone_state(m2, 2000 + i);

    CHECK(bisimilar(m1, m1).has_value());
    CHECK(bisimilar(m1, m2).has_value() == bisimilar(m2, m1).has_value());
    if (bisimilar(m1, m2) && bisimilar(m2, m3))
      CHECK(bisimilar(m1, m3).has_value());
  }
}

TEST_CASE("bisimilar agrees with partition refinement and witnesses replay") {
  GenConfig cfg;
  cfg.seed = 13;
  int positives = 0;
  for (int i = 0; i < 150; ++i) {
    Lts m1 = gen_lts(cfg, 2 * i);
    Lts m2 = i % 2 ? gen_lts(cfg, 2 * i + 1) : clone_state(m1, 5000 + i);
    auto w = bisimilar(m1, m2);
    CHECK(w.has_value() == bisimilar_partition_refinement(m1, m2));
    if (w) {
      ++positives;
      CHECK(bisim_witness_closed(m1, m2, *w));
    }
  }
  CHECK(positives > 20);
}

TEST_CASE("composition commutes up to bisimilarity") {
  GenConfig cfg;
  cfg.seed = 17;
  for (int i = 0; i < 60; ++i) {
    Lts m1 = gen_lts(cfg, 2 * i);
    Lts m2 = gen_lts(cfg, 2 * i + 1);
    CHECK(bisimilar(lts_compose(m1, m2), lts_compose(m2, m1)).has_value());
  }
}

TEST_CASE("pair names stay unique under collisions") {
  std::vector<std::string> names =
      unique_pair_names({{"a|b", "c"}, {"a", "b|c"}});
  CHECK(names[0] == "a|b|c");
  CHECK(names[1] == "a|b|c#2");
}
