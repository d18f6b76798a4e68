#include <fstream>
#include <sstream>

#include "doctest.h"
#include "modal/generate.hpp"
#include "modal/io.hpp"
#include "test_util.hpp"

using namespace modal;
using namespace modal::testing;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MODAL_FIXTURE_DIR) + "/" + name,
                   std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("lts document round trip and canonical form") {
  Lts loop = single_loop(Alphabet({"a", "b"}), "a");
  std::string text = serialize(loop);
  CHECK(parse_lts(text) == loop);
  CHECK(serialize(parse_lts(text)) == text);

  // Permuting declarations yields the identical canonical document.
  std::string permuted =
      "kind: lts\n"
      "alphabet: a b\n"
      "states: t s\n"
      "initial: s\n"
      "trans: t a s\n"
      "trans: s a t\n";
  Lts m = parse_lts(permuted);
  CHECK(serialize(m) ==
        "kind: lts\nalphabet: a b\nstates: s t\ninitial: s\n"
        "trans: s a t\ntrans: t a s\n");
}

TEST_CASE("reference errors name the offender") {
  std::string text =
      "kind: lts\n"
      "alphabet: a\n"
      "states: s\n"
      "initial: s\n"
      "trans: s a ghost\n";
  CHECK_THROWS_WITH_AS((void)parse_lts(text),
                       "undeclared target state 'ghost'", InvalidValue);
}

TEST_CASE("syntax errors carry a position") {
  try {
    (void)parse("kind: lts\nalphabet: a\nstates s\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("formula round trip") {
  Hml f = Hml::conj(Hml::dia("a", Hml::var("x")),
                    Hml::box("b", Hml::disj(Hml::tt(), Hml::ff())));
  CHECK(parse_formula(serialize_formula(f)) == f);
  CHECK(serialize_formula(f) == "(and (dia a (var x)) (box b (or tt ff)))");
}

TEST_CASE("document round trips per kind on generated instances") {
  GenConfig cfg;
  cfg.seed = 179;
  for (int i = 0; i < 80; ++i) {
    Lts m = gen_lts(cfg, i);
    CHECK(parse(serialize(Document{m})) == Document{m});
    Hmlr h = gen_hmlr(cfg, i);
    CHECK(parse(serialize(Document{h})) == Document{h});
    NormalForm s = gen_nf(cfg, i);
    CHECK(parse(serialize(Document{s})) == Document{s});
    Naa a = nf_to_naa(s);
    CHECK(parse(serialize(Document{a})) == Document{a});
  }
}

TEST_CASE("report round trip, including counterexamples") {
  AuditReport r;
  r.seed = 5;
  r.cases = 10;
  r.alphabet = {"a", "b"};
  r.max_states = 3;
  r.max_vars = 3;
  r.laws.push_back({"lattice", "glb-iff", 10, 0, "", false});
  r.laws.push_back({"probe", "compose-conj-distrib", 10, 2,
                    "kind: nf\nvars: x\"quoted\"\n", true});
  r.logical = Flag::Yes;
  r.compositional = Flag::Yes;
  r.complete = Flag::Partial;
  r.unital = true;
  r.classification = "uni. comp. & log.";
  r.algebra = "bounded distributive lattice-ordered commutative monoid";
  r.caveat = "completeness certified over a bounded family";
  r.blowup.push_back({1, 3, 3, 2});
  r.blowup.push_back({2, 6, 5, 4});
  CHECK(parse_report(serialize(r)) == r);
}

TEST_CASE("empty initial sets survive the round trip") {
  NormalForm bot = bottom(Alphabet({"a"}));
  CHECK(parse_nf(serialize(bot)) == bot);

  NormalForm no_init(Alphabet({"a"}), {"x"}, std::vector<int>{},
                     {{DiamondSet{{0, 0}}}},
                     {std::vector<std::vector<int>>{{0}}});
  CHECK(parse_nf(serialize(no_init)) == no_init);
}

TEST_CASE("inconsistent-state automata survive the round trip") {
  Naa a(Alphabet({"a"}), {"bad", "s"}, std::vector<std::string>{"s"},
        {{"s", {{{"a", "bad"}}, {}}}, {"bad", {}}});
  CHECK(parse_naa(serialize(a)) == a);
}

TEST_CASE("golden fixtures are canonical and stable") {
  for (const char* name :
       {"loop.lts", "bloop.lts", "chi_loop.nf", "dia_b.hmlr", "bot.nf",
        "unit_ab.naa"}) {
    std::string text = fixture(name);
    Document doc = parse(text);
    CHECK(serialize(doc) == text);
  }
}

TEST_CASE("serialization is byte-stable across repeated runs") {
  GenConfig cfg;
  cfg.seed = 181;
  for (int i = 0; i < 40; ++i) {
    std::string once = serialize(Document{gen_nf(cfg, i)});
    std::string twice = serialize(Document{gen_nf(cfg, i)});
    CHECK(once == twice);
  }
}
