#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modal/generate.hpp"

namespace modal {

/// Result of running one law over generated cases. A failure stores the
/// minimized counterexample, serialized one operand per line.
struct LawResult {
  std::string suite;
  std::string id;
  int cases = 0;
  int failures = 0;
  std::string counterexample;  // empty when failures == 0
  bool informative = false;    // probes are reported, never asserted

  bool operator==(const LawResult&) const = default;
};

/// Tri-state flag in the style of the taxonomy table.
enum class Flag { No, Partial, Yes };

std::string flag_text(Flag f);

/// One row of the blow-up observation: input acceptance-set count against
/// the diamond-family size of the translated normal form.
struct BlowupRow {
  int n = 0;
  int tran_sets = 0;
  int nf_vars = 0;
  int nf_diamond_sets = 0;

  bool operator==(const BlowupRow&) const = default;
};

/// Aggregated audit outcome: per-law results, the taxonomy flags, and the
/// classification node of the structure spectrum.
struct AuditReport {
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<std::string> alphabet;
  int max_states = 0;
  int max_vars = 0;
  std::vector<LawResult> laws;
  Flag logical = Flag::No;
  Flag compositional = Flag::No;
  Flag complete = Flag::No;
  bool unital = false;
  std::string classification;
  std::string algebra;
  std::string caveat;
  std::vector<BlowupRow> blowup;

  bool operator==(const AuditReport&) const = default;
};

/// Operation table used by the law suites; tests substitute broken
/// operations here to verify that the suites catch them.
struct SuiteOps {
  std::function<NormalForm(const NormalForm&, const NormalForm&)> conj_op;
  std::function<NormalForm(const NormalForm&, const NormalForm&)> disj_op;
  std::function<NormalForm(const NormalForm&, const NormalForm&)> compose_op;

  static SuiteOps standard();
};

/// Which operations the audited theory provides. Suites for absent
/// operations are skipped and the flags degrade accordingly.
struct AuditOptions {
  bool with_disj = true;
  bool with_compose = true;
  bool with_unit = true;
  bool with_quotient = true;
};

/// Suite identifiers accepted by run_suite.
extern const std::vector<std::string> kSuiteIds;

/// Runs every law of one suite ("preorder", "lattice", "semigroup",
/// "unital", "residuation", "bounds", "probe") over generated cases.
/// Failures are data, not errors; counterexamples are shrunk greedily.
std::vector<LawResult> run_suite(const std::string& suite_id,
                                 const GenConfig& cfg,
                                 const SuiteOps& ops = SuiteOps::standard(),
                                 const AuditOptions& opts = AuditOptions{});

/// Runs all suites, classifies the resulting structure in the spectrum, and
/// assembles the report. Deterministic in `cfg`.
AuditReport audit(const GenConfig& cfg,
                  const AuditOptions& opts = AuditOptions{},
                  const SuiteOps& ops = SuiteOps::standard());

/// Classification node for a given flag combination (the greatest node whose
/// requirements are met), together with the algebra it names.
std::pair<std::string, std::string> classify(bool logical, bool compositional,
                                             bool unital, bool complete);

}  // namespace modal
