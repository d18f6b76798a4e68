#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "modal/io.hpp"

namespace {

using namespace modal;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Lts load_lts(const std::string& path) { return parse_lts(slurp(path)); }
Hmlr load_hmlr(const std::string& path) { return parse_hmlr(slurp(path)); }
NormalForm load_nf(const std::string& path) { return parse_nf(slurp(path)); }
Naa load_naa(const std::string& path) { return parse_naa(slurp(path)); }

Alphabet alphabet_from_list(const std::string& csv) {
  std::vector<std::string> labels;
  std::string current;
  for (char c : csv) {
    if (c == ',') {
      labels.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  labels.push_back(current);
  return Alphabet(labels);
}

int answer(bool yes, const char* text_yes, const char* text_no) {
  std::cout << (yes ? text_yes : text_no) << "\n";
  return yes ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for behavioral specifications of transition systems"};
  app.require_subcommand(1);

  std::string file1, file2, alphabet_csv;
  int bound = 1;
  bool det_mode = false, bounded_mode = false, pretty = false;
  std::uint64_t seed = 1;
  int cases = 200, max_states = 3;

  auto* cmd_bisim = app.add_subcommand("bisim", "decide bisimilarity of two systems");
  cmd_bisim->add_option("M1", file1)->required();
  cmd_bisim->add_option("M2", file2)->required();

  auto* cmd_chi = app.add_subcommand("chi", "characteristic formula of a system");
  cmd_chi->add_option("M", file1)->required();

  auto* cmd_check = app.add_subcommand("check", "fixed-point model check of a recursive formula");
  cmd_check->add_option("M", file1)->required();
  cmd_check->add_option("H", file2)->required();

  auto* cmd_sat = app.add_subcommand("sat", "satisfaction via the refinement route");
  cmd_sat->add_option("M", file1)->required();
  cmd_sat->add_option("S", file2)->required();

  auto* cmd_refine = app.add_subcommand("refine", "decide refinement of normal forms");
  cmd_refine->add_option("S1", file1)->required();
  cmd_refine->add_option("S2", file2)->required();

  auto* cmd_equiv = app.add_subcommand("equiv", "decide modal equivalence");
  cmd_equiv->add_option("S1", file1)->required();
  cmd_equiv->add_option("S2", file2)->required();

  auto* cmd_normalize = app.add_subcommand("normalize", "translate a guarded formula to normal form");
  cmd_normalize->add_option("H", file1)->required();

  auto* cmd_and = app.add_subcommand("and", "conjunction of two normal forms");
  cmd_and->add_option("S1", file1)->required();
  cmd_and->add_option("S2", file2)->required();

  auto* cmd_or = app.add_subcommand("or", "disjunction of two normal forms");
  cmd_or->add_option("S1", file1)->required();
  cmd_or->add_option("S2", file2)->required();

  auto* cmd_top = app.add_subcommand("top", "the top specification");
  cmd_top->add_option("--alphabet", alphabet_csv, "comma-separated labels")->required();

  auto* cmd_bot = app.add_subcommand("bot", "the bottom specification");
  cmd_bot->add_option("--alphabet", alphabet_csv, "comma-separated labels")->required();

  auto* cmd_compose = app.add_subcommand("compose", "composition of two normal forms");
  cmd_compose->add_option("S1", file1)->required();
  cmd_compose->add_option("S2", file2)->required();

  auto* cmd_quotient = app.add_subcommand("quotient", "residual of composition: greatest X with S1 || X <= S3");
  cmd_quotient->add_option("S3", file1, "the dividend")->required();
  cmd_quotient->add_option("S1", file2, "the divisor")->required();
  auto* det_flag = cmd_quotient->add_flag("--det", det_mode, "deterministic-operand construction");
  auto* bounded_flag = cmd_quotient->add_option("--bounded", bound, "bounded synthesis over <= k variables");
  det_flag->excludes(bounded_flag);

  auto* cmd_tonaa = app.add_subcommand("to-naa", "translate a normal form to an acceptance automaton");
  cmd_tonaa->add_option("S", file1)->required();

  auto* cmd_todmts = app.add_subcommand("to-dmts", "translate an acceptance automaton to a normal form");
  cmd_todmts->add_option("A", file1)->required();

  auto* cmd_unit = app.add_subcommand("unit", "the unit of composition");
  cmd_unit->add_option("--alphabet", alphabet_csv, "comma-separated labels")->required();

  auto* cmd_ltscompose = app.add_subcommand("lts-compose", "synchronized product of two systems");
  cmd_ltscompose->add_option("M1", file1)->required();
  cmd_ltscompose->add_option("M2", file2)->required();

  auto* cmd_audit = app.add_subcommand("audit", "run the algebraic law suites and classify the theory");
  cmd_audit->add_option("--seed", seed);
  cmd_audit->add_option("--cases", cases);
  cmd_audit->add_option("--max-states", max_states);
  cmd_audit->add_option("--alphabet", alphabet_csv, "comma-separated labels");
  cmd_audit->add_flag("--pretty", pretty, "human-readable summary instead of a document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_bisim->parsed())
      return answer(bisimilar(load_lts(file1), load_lts(file2)).has_value(),
                    "bisimilar", "not bisimilar");
    if (cmd_chi->parsed()) {
      std::cout << serialize(Document{chi(load_lts(file1))});
      return 0;
    }
    if (cmd_check->parsed())
      return answer(check_hml(load_lts(file1), load_hmlr(file2)), "satisfied",
                    "not satisfied");
    if (cmd_sat->parsed())
      return answer(satisfies(load_lts(file1), load_nf(file2)), "satisfied",
                    "not satisfied");
    if (cmd_refine->parsed())
      return answer(refines(load_nf(file1), load_nf(file2)).has_value(),
                    "refines", "does not refine");
    if (cmd_equiv->parsed())
      return answer(mod_equiv(load_nf(file1), load_nf(file2)), "equivalent",
                    "not equivalent");
    if (cmd_normalize->parsed()) {
      std::cout << serialize(Document{normalize(load_hmlr(file1))});
      return 0;
    }
    if (cmd_and->parsed()) {
      std::cout << serialize(Document{conj(load_nf(file1), load_nf(file2))});
      return 0;
    }
    if (cmd_or->parsed()) {
      std::cout << serialize(Document{disj(load_nf(file1), load_nf(file2))});
      return 0;
    }
    if (cmd_top->parsed()) {
      std::cout << serialize(Document{top(alphabet_from_list(alphabet_csv))});
      return 0;
    }
    if (cmd_bot->parsed()) {
      std::cout << serialize(Document{bottom(alphabet_from_list(alphabet_csv))});
      return 0;
    }
    if (cmd_compose->parsed()) {
      std::cout << serialize(Document{compose(load_nf(file1), load_nf(file2))});
      return 0;
    }
    if (cmd_quotient->parsed()) {
      NormalForm s3 = load_nf(file1);
      NormalForm s1 = load_nf(file2);
      if (det_mode) {
        Naa q = quotient_det(nf_to_naa(s3), nf_to_naa(s1));
        std::cout << serialize(Document{naa_to_nf(q)});
      } else {
        std::cout << serialize(Document{quotient_bounded(s3, s1, bound)});
      }
      return 0;
    }
    if (cmd_tonaa->parsed()) {
      std::cout << serialize(Document{nf_to_naa(load_nf(file1))});
      return 0;
    }
    if (cmd_todmts->parsed()) {
      std::cout << serialize(Document{naa_to_nf(load_naa(file1))});
      return 0;
    }
    if (cmd_unit->parsed()) {
      std::cout << serialize(Document{unit(alphabet_from_list(alphabet_csv))});
      return 0;
    }
    if (cmd_ltscompose->parsed()) {
      std::cout << serialize(
          Document{lts_compose(load_lts(file1), load_lts(file2))});
      return 0;
    }
    if (cmd_audit->parsed()) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.cases = cases;
      cfg.max_states = max_states;
      cfg.max_vars = max_states;
      if (!alphabet_csv.empty()) cfg.alphabet = alphabet_from_list(alphabet_csv);
      AuditReport report = audit(cfg);
      std::cout << (pretty ? pretty_report(report)
                           : serialize(Document{report}));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
