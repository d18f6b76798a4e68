#pragma once

#include <map>
#include <string>
#include <vector>

#include "modal/errors.hpp"

namespace modal {

/// Returns true iff `name` is usable as a label / state / variable name in
/// the text formats: nonempty, printable, and free of the characters the
/// tokenizer reserves.
bool is_valid_name(const std::string& name);

/// A finite, ordered set of transition labels.
///
/// The declared order is kept: it fixes the iteration order of every
/// construction downstream, so equal inputs always produce identical outputs.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of `name`, or -1 when not a label of this alphabet.
  int index(const std::string& name) const;
  bool contains(const std::string& name) const { return index(name) >= 0; }

  bool operator==(const Alphabet& other) const {
    return labels_ == other.labels_;
  }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
};

/// Throws AlphabetMismatch unless both alphabets are equal.
void require_same_alphabet(const Alphabet& a, const Alphabet& b,
                           const char* operation);

}  // namespace modal
