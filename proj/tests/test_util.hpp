#pragma once

#include "modal/io.hpp"

namespace modal::testing {

inline Lts single_loop(const Alphabet& alphabet, const std::string& label) {
  return Lts(alphabet, {"s"}, "s", {{"s", label, "s"}});
}

inline Lts deadlock(const Alphabet& alphabet) {
  return Lts(alphabet, {"s"}, "s", {});
}

inline Lts two_state_cycle(const Alphabet& alphabet, const std::string& label) {
  return Lts(alphabet, {"s", "t"}, "s",
             {{"s", label, "t"}, {"t", label, "s"}});
}

inline Lts all_loops(const Alphabet& alphabet) {
  std::vector<std::tuple<std::string, std::string, std::string>> trans;
  for (const std::string& l : alphabet.labels()) trans.emplace_back("s", l, "s");
  return Lts(alphabet, {"s"}, "s", trans);
}

inline bool refinement_holds(const NormalForm& a, const NormalForm& b) {
  return refines(a, b).has_value();
}

}  // namespace modal::testing
