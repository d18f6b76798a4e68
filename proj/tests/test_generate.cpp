#include "doctest.h"
#include "modal/generate.hpp"
#include "test_util.hpp"

using namespace modal;
using namespace modal::testing;

TEST_CASE("generators are deterministic in (config, index)") {
  GenConfig cfg;
  cfg.seed = 151;
  for (int i = 0; i < 20; ++i) {
    CHECK(gen_lts(cfg, i) == gen_lts(cfg, i));
    CHECK(gen_nf(cfg, i) == gen_nf(cfg, i));
    CHECK(gen_hmlr(cfg, i) == gen_hmlr(cfg, i));
    CHECK(gen_det_nf(cfg, i) == gen_det_nf(cfg, i));
  }
  GenConfig other = cfg;
  other.seed = 152;
  int differs = 0;
  for (int i = 0; i < 20; ++i)
    if (!(gen_lts(cfg, i) == gen_lts(other, i))) ++differs;
  CHECK(differs > 10);
}

TEST_CASE("density zero produces empty structures") {
  GenConfig cfg;
  cfg.seed = 157;
  cfg.box_density = 0.0;
  cfg.dia_density = 0.0;
  for (int i = 0; i < 10; ++i) {
    CHECK(gen_lts(cfg, i).transitions().empty());
    NormalForm s = gen_nf(cfg, i);
    for (int v = 0; v < s.num_vars(); ++v) {
      CHECK(s.diamonds(v).empty());
      for (int a = 0; a < s.alphabet().size(); ++a)
        CHECK(s.boxes(v, a).empty());
    }
  }
}

TEST_CASE("density one on one state gives the all-loop structures") {
  GenConfig cfg;
  cfg.seed = 163;
  cfg.alphabet = Alphabet({"a"});
  cfg.box_density = 1.0;
  cfg.dia_density = 1.0;
  cfg.max_states = 1;
  cfg.max_vars = 1;
  Lts loop = single_loop(cfg.alphabet, "a");
  for (int i = 0; i < 10; ++i) {
    CHECK(gen_lts(cfg, i) == loop);
    CHECK(mod_equiv(gen_nf(cfg, i), chi(loop)));
  }
}

TEST_CASE("generated normal forms are locally consistent") {
  GenConfig cfg;
  cfg.seed = 167;
  for (int i = 0; i < 60; ++i) {
    NormalForm s = gen_nf(cfg, i);
    for (int v = 0; v < s.num_vars(); ++v)
      for (const DiamondSet& n : s.diamonds(v)) CHECK_FALSE(n.empty());
  }
}

TEST_CASE("gen_strengthening refines its source") {
  GenConfig cfg;
  cfg.seed = 173;
  for (int i = 0; i < 60; ++i) {
    NormalForm s = gen_nf(cfg, i);
    NormalForm stronger = gen_strengthening(s, 500 + i);
    CHECK(refinement_holds(stronger, s));
  }
}

TEST_CASE("configuration bounds are validated") {
  GenConfig cfg;
  cfg.max_vars = 9;
  CHECK_THROWS_AS(cfg.validate(), PreconditionError);
  GenConfig cfg2;
  cfg2.dia_density = 1.5;
  CHECK_THROWS_AS(cfg2.validate(), PreconditionError);
}
